import json

import numpy as np
import pytest

from quasinv.channels import KrausChannel, SIGMA_Y
from quasinv.documents import (
    DocumentError,
    complex_matrix_to_json,
    dumps,
    kraus_document,
    parse_channel_document,
)


class TestParsing:
    def test_kraus_roundtrip(self):
        k = KrausChannel([SIGMA_Y])
        doc = kraus_document(k, label="flip-y")
        parsed = parse_channel_document(doc)
        assert parsed.label == "flip-y"
        assert np.array_equal(parsed.kraus.operators[0], SIGMA_Y)
        assert np.allclose(parsed.affine.m, np.diag([-1.0, 1.0, -1.0]), atol=1e-15)

    def test_affine_document(self):
        doc = {"type": "affine", "m": [[0.5, 0, 0], [0, 0.5, 0], [0, 0, 0.5]], "c": [0, 0, 0.1]}
        parsed = parse_channel_document(doc)
        assert parsed.kraus is None
        assert parsed.affine.c[2] == 0.1

    def test_rejects_non_object(self):
        with pytest.raises(DocumentError):
            parse_channel_document([1, 2, 3])

    def test_rejects_missing_fields(self):
        with pytest.raises(DocumentError, match="missing"):
            parse_channel_document({"type": "gad", "gamma": 0.5})

    def test_rejects_bad_operator_shape(self):
        with pytest.raises(DocumentError):
            parse_channel_document({"type": "kraus", "operators": [[[1, 0], [0, 1]]]})

    def test_rejects_non_tp_kraus(self):
        half = [[[0.5, 0], [0, 0]], [[0, 0], [0.5, 0]]]
        with pytest.raises(DocumentError, match="trace preserving"):
            parse_channel_document({"type": "kraus", "operators": [half]})

    def test_rejects_non_numeric_parameter(self):
        with pytest.raises(DocumentError, match="number"):
            parse_channel_document({"type": "gad", "gamma": "big", "p": 0.1})

    def test_rejects_non_string_label(self):
        with pytest.raises(DocumentError, match="label"):
            parse_channel_document({"type": "pauli", "p": [1, 0, 0, 0], "label": 7})

    def test_rejects_invalid_family_parameters(self):
        with pytest.raises(DocumentError):
            parse_channel_document({"type": "tetrahedron", "p": 0.4, "p_prime": 0.3})


class TestDumps:
    def test_floats_roundtrip(self):
        values = [0.1, 1 / 3, np.sqrt(0.6), 1e-300, -0.0, 123456.789]
        text = dumps({"v": values})
        assert json.loads(text)["v"] == values

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            dumps({"v": float("nan")})

    def test_deterministic(self):
        doc = kraus_document(KrausChannel([SIGMA_Y]), label="y")
        assert dumps(doc) == dumps(doc)

    def test_nested_layout_parses(self):
        doc = {"a": {"b": [1, 2.5, None, True], "c": "text"}, "d": []}
        assert json.loads(dumps(doc, indent=2)) == doc

    def test_complex_matrix_encoding(self):
        enc = complex_matrix_to_json(SIGMA_Y)
        assert enc == [[[0.0, 0.0], [0.0, -1.0]], [[0.0, 1.0], [0.0, 0.0]]]

    def test_rejects_unknown_type(self):
        with pytest.raises(TypeError):
            dumps({"v": object()})
