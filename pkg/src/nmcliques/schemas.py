"""JSON schemas for the machine-readable output of every CLI command."""

_INT = {"type": "integer"}
_OPT_INT = {"type": ["integer", "null"]}
_BOOL = {"type": "boolean"}
_STR = {"type": "string"}
_PAIR = {"type": "array", "items": _INT, "minItems": 2, "maxItems": 2}


def _obj(props: dict, required=None) -> dict:
    return {
        "type": "object",
        "properties": props,
        "required": list(props) if required is None else required,
        "additionalProperties": False,
    }


_WITNESS = _obj({
    "class": {"enum": ["planar", "outerplanar", "any"]},
    "order": _INT,
    "class_ok": _BOOL,
    "complete": _BOOL,
    "complete_by_seeing": _BOOL,
    "complete_by_identification": _BOOL,
    "blaming_pair": {"anyOf": [_PAIR, {"type": "null"}]},
    "bound": _OPT_INT,
    "within_bound": {"type": ["boolean", "null"]},
    "passed": _BOOL,
})

SCHEMAS: dict[str, dict] = {
    "bound": _obj({"n": _INT, "m": _INT, "p": _INT, "bound": _INT}),
    "verify": _obj({"input": _STR, "report": _WITNESS}),
    "sees": _obj({
        "input": _STR,
        "u": _INT,
        "v": _INT,
        "sees": _BOOL,
        "kind": {"enum": ["adjacent", "special-path", None]},
        "middle": _OPT_INT,
        "labels": {"anyOf": [_PAIR, {"type": "null"}]},
    }),
    "hom": _obj({
        "source": _STR,
        "target": _STR,
        "found": _BOOL,
        "map": {"anyOf": [{"type": "array", "items": _INT}, {"type": "null"}]},
    }),
    "chi": _obj({"input": _STR, "limit": _OPT_INT, "chi": _OPT_INT}),
    "clique": _obj({"input": _STR, "size": _INT, "witness": {"type": "array", "items": _INT}}),
    "search": _obj({
        "n": _INT,
        "m": _INT,
        "class": {"enum": ["planar", "outerplanar", "any"]},
        "max_order": _INT,
        "seed": _INT,
        "threads": _INT,
        "best_order": _INT,
        "status": {"enum": ["exhausted", "budget_exhausted"]},
        "nodes_explored": _INT,
        "level_sizes": {"type": "array", "items": _INT},
        "witness_file": _STR,
    }),
    "audit": _obj({
        "input": _STR,
        "valid": _BOOL,
        "case": _STR,
        "quantities": _obj({k: _OPT_INT for k in ("p", "k", "i", "j", "s_max", "E", "|V|")}),
        "bound": _OPT_INT,
        "inequalities": {
            "type": "array",
            "items": _obj({
                "name": _STR,
                "hypothesis": _BOOL,
                "lhs": _INT,
                "rhs": _INT,
                "ok": _BOOL,
            }),
        },
        "verdict": {"enum": ["consistent", "refutation", "inapplicable"]},
    }),
    "verify-corpus": _obj({
        "directory": _STR,
        "ok": _BOOL,
        "rows": {
            "type": "array",
            "items": _obj({
                "file": _STR,
                "n": _INT,
                "m": _INT,
                "class": _STR,
                "claimed_order": _INT,
                "ok": _BOOL,
                "problems": {"type": "array", "items": _STR},
            }),
        },
    }),
}
