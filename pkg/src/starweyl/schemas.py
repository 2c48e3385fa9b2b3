"""JSON Schemas for every serialized object and CLI payload.

These are data, not a runtime dependency: the library validates by hand, and
the test suite checks emitted JSON against these schemas with a proper
validator. Keep them in sync with the to_json methods.
"""

_SCALAR_TEXT = {"type": "string", "minLength": 1}
_COEFF = {
    "oneOf": [
        _SCALAR_TEXT,
        {
            "type": "array",
            "items": {"type": "number"},
            "minItems": 2,
            "maxItems": 2,
        },
    ]
}
_EXP = {"type": "array", "items": {"type": "integer", "minimum": 0}}

POLYNOMIAL_SCHEMA = {
    "type": "object",
    "properties": {
        "generators": {
            "type": "array", "items": {"type": "string"}, "minItems": 1,
        },
        "scalar_domain": {"enum": ["formal", "numeric"]},
        "truncation": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {"exp": _EXP, "coeff": _COEFF},
                "required": ["exp", "coeff"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["generators", "scalar_domain", "terms"],
    "additionalProperties": False,
}

FORM_SCHEMA = {
    "type": "object",
    "properties": {
        "generators": {
            "type": "array", "items": {"type": "string"}, "minItems": 1,
        },
        "matrix": {
            "type": "array",
            "items": {"type": "array", "items": _COEFF},
        },
    },
    "required": ["generators", "matrix"],
    "additionalProperties": False,
}

OPERATOR_SCHEMA = {
    "type": "object",
    "properties": {
        "generators": {
            "type": "array", "items": {"type": "string"}, "minItems": 1,
        },
        "scalar_domain": {"enum": ["formal", "numeric"]},
        "truncation": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "coef_exp": _EXP,
                    "deriv_exp": _EXP,
                    "coeff": _COEFF,
                },
                "required": ["coef_exp", "deriv_exp", "coeff"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["generators", "scalar_domain", "terms"],
    "additionalProperties": False,
}

ALGEBRA_SCHEMA = {
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 1},
        "basis": {"type": "array", "items": {"type": "string"}, "minItems": 1},
        "coords": {"type": "array", "items": {"type": "string"}},
        "brackets": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "i": {"type": "integer", "minimum": 0},
                    "j": {"type": "integer", "minimum": 0},
                    "coeffs": {"type": "array", "items": _SCALAR_TEXT},
                },
                "required": ["i", "j", "coeffs"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["dim", "basis", "brackets"],
    "additionalProperties": False,
}

CONFIG_SCHEMA = {
    "type": "object",
    "properties": {
        "generators": {
            "type": "array", "items": {"type": "string"}, "minItems": 1,
        },
        "domain": {"enum": ["formal", "numeric"]},
        "truncation": {"type": "integer", "minimum": 0},
        "lambda": {
            "type": "object",
            "properties": {
                "matrix": {
                    "type": "array",
                    "items": {
                        "type": "array",
                        "items": {
                            "oneOf": [_SCALAR_TEXT, {"type": "number"}],
                        },
                    },
                },
            },
            "required": ["matrix"],
            "additionalProperties": False,
        },
        "z": {"oneOf": [_SCALAR_TEXT, {"type": "number"}]},
        "seminorm": {
            "type": "object",
            "properties": {
                "weights": {
                    "type": "array",
                    "items": {"type": "number", "exclusiveMinimum": 0},
                    "minItems": 1,
                },
                "R": {"type": "number", "minimum": 0.5},
            },
            "required": ["weights", "R"],
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}

POLY_PAYLOAD_SCHEMA = {
    "type": "object",
    "properties": {
        "result": POLYNOMIAL_SCHEMA,
        "text": {"type": "string"},
    },
    "required": ["result", "text"],
    "additionalProperties": False,
}

OPERATOR_PAYLOAD_SCHEMA = {
    "type": "object",
    "properties": {
        "result": OPERATOR_SCHEMA,
        "text": {"type": "string"},
    },
    "required": ["result", "text"],
    "additionalProperties": False,
}

BCH_PAYLOAD_SCHEMA = {
    "type": "object",
    "properties": {
        "algebra": {"type": "array", "items": {"type": "string"}},
        "order": {"type": "integer", "minimum": 0},
        "components": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "order": {"type": "integer", "minimum": 1},
                    "coeffs": {"type": "array", "items": _SCALAR_TEXT},
                },
                "required": ["order", "coeffs"],
                "additionalProperties": False,
            },
        },
        "text": {"type": "string"},
    },
    "required": ["algebra", "order", "components", "text"],
    "additionalProperties": False,
}

SEMINORM_PAYLOAD_SCHEMA = {
    "type": "object",
    "properties": {
        "value": {"type": "number"},
        "R": {"type": "number"},
        "weights": {"type": "array", "items": {"type": "number"}},
        "hbar": {"type": "number"},
    },
    "required": ["value", "R", "weights", "hbar"],
    "additionalProperties": False,
}

CONVERGENCE_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "check": {"const": "exponential_convergence"},
        "R": {"type": "number"},
        "x": {"type": "number"},
        "kmax": {"type": "integer"},
        "verdict": {"enum": ["convergent", "divergent"]},
        "reason": {"type": "string"},
        "limit": {"type": ["number", "null"]},
        "tail": {"type": ["number", "null"]},
        "partial_sums": {"type": "array", "items": {"type": "number"}},
    },
    "required": ["check", "verdict", "reason", "partial_sums"],
    "additionalProperties": False,
}

WEYLREL_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "check": {"const": "weyl_relation"},
        "window": {
            "type": "object",
            "properties": {
                "degree": {"type": "integer"},
                "orders": {"type": "integer"},
            },
            "required": ["degree", "orders"],
            "additionalProperties": False,
        },
        "defect_max": {"type": "string"},
        "status": {"enum": ["pass", "fail"]},
    },
    "required": ["check", "window", "defect_max", "status"],
    "additionalProperties": False,
}

VERIFY_REPORT_SCHEMA = {
    "type": "object",
    "properties": {
        "suite": {"type": "string"},
        "seed": {"type": "integer"},
        "status": {"enum": ["pass", "fail"]},
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "number": {"type": "integer"},
                    "name": {"type": "string"},
                    "status": {"enum": ["pass", "fail"]},
                    "detail": {"type": "string"},
                },
                "required": ["number", "name", "status", "detail"],
                "additionalProperties": False,
            },
        },
    },
    "required": ["suite", "seed", "status", "results"],
    "additionalProperties": False,
}
