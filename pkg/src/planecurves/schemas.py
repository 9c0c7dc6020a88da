"""JSON schemas for every CLI output, frozen for downstream consumers.

Tests validate each --json command output against these; changing a shape
here is a compatibility break and should be treated like an API change.
"""

_COORD_STEP = {
    "type": "object",
    "properties": {
        "kind": {"enum": ["translate", "shear", "swap", "chart"]},
        "a": {"type": "string"},
        "b": {"type": "string"},
        "lambda": {"type": "string"},
        "shift": {"type": ["string", "null"]},
    },
    "required": ["kind"],
}

_COORD_CHANGE = {"type": "array", "items": _COORD_STEP}

_TREE_NODE = {
    "type": "object",
    "properties": {
        "id": {"type": "integer"},
        "depth": {"type": "integer", "minimum": 0},
        "field": {"type": "string"},
        "local_eq": {"type": "string"},
        "r": {"type": "integer", "minimum": 0},
        "shift": {"type": ["string", "null"]},
        "coord_change": _COORD_CHANGE,
        "children": {"type": "array", "items": {"$ref": "#/definitions/node"}},
    },
    "required": ["id", "depth", "field", "local_eq", "r", "shift", "children"],
}

RESOLVE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "definitions": {"node": _TREE_NODE},
    "properties": {
        "termination": {"enum": ["Resolved", "DepthCapped"]},
        "root": {"$ref": "#/definitions/node"},
    },
    "required": ["termination", "root"],
}

DELTA_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "point": {"type": "array", "items": {"type": "string"}},
        "field": {"type": "string"},
        "multiplicity_sequence": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer"},
                "minItems": 2,
                "maxItems": 2,
            },
        },
        "delta": {"type": "integer", "minimum": 0},
        "conductor_degree": {"type": "integer", "minimum": 0},
    },
    "required": ["point", "field", "multiplicity_sequence", "delta", "conductor_degree"],
}

_PROJ_POINT = {
    "type": "object",
    "properties": {
        "coords": {
            "type": "array",
            "items": {"type": "string"},
            "minItems": 3,
            "maxItems": 3,
        },
        "field": {"type": "string"},
    },
    "required": ["coords", "field"],
}

GENUS_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "genus": {"type": "integer", "minimum": 0},
        "degree": {"type": "integer", "minimum": 1},
        "singular_points": {"type": "array", "items": _PROJ_POINT},
        "deltas": {"type": "array", "items": {"type": "integer", "minimum": 0}},
    },
    "required": ["genus", "degree", "singular_points", "deltas"],
}

INTERSECT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "point": {"type": "array", "items": {"type": "string"}},
        "field": {"type": "string"},
        "contributions": {
            "type": "array",
            "items": {
                "type": "array",
                "items": {"type": "integer"},
                "minItems": 3,
                "maxItems": 3,
            },
        },
        "noether_sum": {"type": "integer", "minimum": 0},
        "oracle_value": {"type": "integer", "minimum": 0},
        "agreement": {"type": "boolean"},
    },
    "required": ["point", "field", "contributions", "noether_sum", "oracle_value", "agreement"],
}

ADJOINT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "ok": {"type": "boolean"},
        "nodes": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "depth": {"type": "integer", "minimum": 0},
                    "r_C": {"type": "integer", "minimum": 0},
                    "r_G": {"type": "integer", "minimum": 0},
                    "margin": {"type": "integer"},
                },
                "required": ["depth", "r_C", "r_G", "margin"],
            },
        },
    },
    "required": ["ok", "nodes"],
}

CONDITION_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "ok": {"type": "boolean"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "point": _PROJ_POINT,
                    "chart": {"enum": ["X", "Y", "Z"]},
                    "ok": {"type": "boolean"},
                    "nodes": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "properties": {
                                "depth": {"type": "integer", "minimum": 0},
                                "r_F": {"type": "integer", "minimum": 0},
                                "r_G": {"type": "integer", "minimum": 0},
                                "r_H": {"type": "integer", "minimum": 0},
                                "margin": {"type": "integer"},
                            },
                            "required": ["depth", "r_F", "r_G", "r_H", "margin"],
                        },
                    },
                    "failure_depth": {"type": ["integer", "null"]},
                },
                "required": ["point", "chart", "ok", "nodes", "failure_depth"],
            },
        },
    },
    "required": ["ok", "points"],
}

CERTIFICATE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "status": {"enum": ["Solved", "NoSolution", "HypothesisFailed"]},
        "A": {"type": ["string", "null"]},
        "B": {"type": ["string", "null"]},
        "residual": {"type": ["string", "null"]},
        "point": {"anyOf": [_PROJ_POINT, {"type": "null"}]},
        "depth": {"type": ["integer", "null"]},
    },
    "required": ["status", "A", "B", "residual"],
}

BEZOUT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "total": {"type": "integer", "minimum": 0},
        "expected": {"type": "integer", "minimum": 0},
        "ok": {"type": "boolean"},
        "points": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "point": _PROJ_POINT,
                    "chart": {"enum": ["X", "Y", "Z"]},
                    "multiplicity": INTERSECT_SCHEMA,
                },
                "required": ["point", "chart", "multiplicity"],
            },
        },
    },
    "required": ["total", "expected", "ok", "points"],
}

APPENDIX_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "properties": {
        "stages": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "stage": {"type": "integer", "minimum": 1},
                    "equation": {"type": "string"},
                    "shift": {"type": ["string", "null"]},
                },
                "required": ["stage", "equation", "shift"],
            },
        },
        "phi": {"type": "string"},
        "failed": {
            "anyOf": [
                {"type": "null"},
                {
                    "type": "object",
                    "properties": {
                        "stage": {"type": "integer"},
                        "reason": {"type": "string"},
                    },
                    "required": ["stage", "reason"],
                },
            ]
        },
    },
    "required": ["stages", "phi", "failed"],
}

JOINT_TREE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "definitions": {
        "node": {
            "type": "object",
            "properties": {
                "id": {"type": "integer"},
                "depth": {"type": "integer", "minimum": 0},
                "field": {"type": "string"},
                "curves": {
                    "type": "object",
                    "additionalProperties": {
                        "type": "object",
                        "properties": {
                            "local_eq": {"type": "string"},
                            "r": {"type": "integer", "minimum": 0},
                        },
                        "required": ["local_eq", "r"],
                    },
                },
                "shift": {"type": ["string", "null"]},
                "children": {"type": "array", "items": {"$ref": "#/definitions/node"}},
            },
            "required": ["id", "depth", "field", "curves", "shift", "children"],
        }
    },
    "properties": {
        "labels": {"type": "array", "items": {"type": "string"}},
        "root": {"$ref": "#/definitions/node"},
    },
    "required": ["labels", "root"],
}
