"""JSON Schema for the ``analyze`` report (schema_version 1)."""

_MATRIX = {"type": "array", "items": {"type": "array", "items": {"type": "number"}}}

ANALYSIS_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["schema_version", "command", "graph", "rank_report", "spectral", "forest", "eigenprojector"],
    "properties": {
        "schema_version": {"const": 1},
        "command": {"const": "analyze"},
        "graph": {
            "type": "object",
            "required": ["n", "arc_count"],
            "properties": {
                "n": {"type": "integer", "minimum": 1},
                "arc_count": {"type": "integer", "minimum": 0},
            },
        },
        "rank_report": {
            "type": "object",
            "required": ["n", "c", "num_sink_sccs", "d", "rank_corrected", "rank_lemma2_original",
                         "lemma2_formula_valid", "sccs_pairwise_disconnected"],
            "properties": {
                "n": {"type": "integer"},
                "c": {"type": "integer"},
                "num_sink_sccs": {"type": "integer"},
                "d": {"type": "integer"},
                "rank_corrected": {"type": "integer"},
                "rank_lemma2_original": {"type": "integer"},
                "lemma2_formula_valid": {"type": "boolean"},
                "sccs_pairwise_disconnected": {"type": "boolean"},
            },
        },
        "spectral": {
            "type": "object",
            "required": ["eigenvalues", "zero_multiplicity", "numerical_rank",
                         "min_nonzero_real_part", "localization_holds"],
            "properties": {
                "eigenvalues": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
                },
                "zero_multiplicity": {"type": "integer"},
                "numerical_rank": {"type": "integer"},
                "min_nonzero_real_part": {"type": ["number", "null"]},
                "localization_holds": {"type": "boolean"},
            },
        },
        "forest": {
            "oneOf": [
                {
                    "type": "object",
                    "required": ["d", "total_weight", "forest_count", "j_matrix"],
                    "properties": {
                        "d": {"type": "integer"},
                        "total_weight": {"type": "number", "exclusiveMinimum": 0},
                        "forest_count": {"type": "integer", "minimum": 1},
                        "j_matrix": _MATRIX,
                    },
                },
                {
                    "type": "object",
                    "required": ["skipped", "reason"],
                    "properties": {"skipped": {"const": True}, "reason": {"type": "string"}},
                },
            ]
        },
        "eigenprojector": _MATRIX,
    },
}
