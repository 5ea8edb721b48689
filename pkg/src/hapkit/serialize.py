"""JSON (de)serialization for tables, families, generators and cocycles.

Schemas
-------
IrrepTable:        {"entries": [{"id": str, "dim": int, "trivial": bool}, ...]}
FreeProductTable:  {"factor1": <table>, "factor2": <table>, "max_word_length": int}
                   (words are recomputed on load, never stored)
MatrixFamily:      {"table": <table or free product>, "blocks": {key: <matrix>},
                    "normalized": bool}
GeneratingFunctional: family shape plus "kind": "generator"; the trivial
                   block must be zero and is enforced on load.
CocycleMatrices:   family shape plus "kind": "cocycle"; the trivial label
                   must be absent.

Matrices are lists of rows of [re, im] pairs.  Block keys are label ids for
plain tables and "i1:id1|i2:id2|..." word encodings (empty string for the
trivial word) for free-product tables.  Writing is deterministic: canonical
label order, sorted keys, fixed separators.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .cocycle import CocycleMatrices
from .fourier import MatrixFamily
from .genfun import GeneratingFunctional
from .irreps import FreeProductTable, IrrepTable, free_product_table, make_table, parse_word


class SchemaError(ValueError):
    """Input JSON does not match the expected shape."""


def _expect(cond: bool, where: str, what: str) -> None:
    if not cond:
        raise SchemaError(f"{where}: {what}")


def matrix_to_obj(block: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(block)]


def matrix_from_obj(obj, where: str) -> np.ndarray:
    _expect(isinstance(obj, list) and obj, where, "matrix must be a nonempty list of rows")
    n = len(obj)
    out = np.empty((n, n), dtype=np.complex128)
    for i, row in enumerate(obj):
        _expect(isinstance(row, list) and len(row) == n, where,
                f"row {i} must have {n} entries")
        for j, entry in enumerate(row):
            _expect(isinstance(entry, list) and len(entry) == 2
                    and all(isinstance(x, (int, float)) for x in entry),
                    where, f"entry ({i},{j}) must be an [re, im] pair")
            out[i, j] = complex(entry[0], entry[1])
    return out


def table_to_obj(table) -> dict:
    if isinstance(table, FreeProductTable):
        return {
            "factor1": table_to_obj(table.factor1),
            "factor2": table_to_obj(table.factor2),
            "max_word_length": table.max_word_length,
        }
    return {
        "entries": [
            {"id": lab.id, "dim": dim, "trivial": lab.is_trivial}
            for lab, dim in table.entries
        ]
    }


def table_from_obj(obj, where: str = "table"):
    _expect(isinstance(obj, dict), where, "must be an object")
    if "factor1" in obj or "factor2" in obj or "max_word_length" in obj:
        for key in ("factor1", "factor2", "max_word_length"):
            _expect(key in obj, where, f"free-product table needs {key!r}")
        mwl = obj["max_word_length"]
        _expect(isinstance(mwl, int) and mwl >= 0, where,
                "max_word_length must be a nonnegative integer")
        f1 = table_from_obj(obj["factor1"], where + ".factor1")
        f2 = table_from_obj(obj["factor2"], where + ".factor2")
        _expect(isinstance(f1, IrrepTable) and isinstance(f2, IrrepTable), where,
                "factors must be plain tables")
        return free_product_table(f1, f2, mwl)
    _expect("entries" in obj and isinstance(obj["entries"], list), where,
            "needs an 'entries' list")
    entries = []
    trivial_id = None
    for i, ent in enumerate(obj["entries"]):
        _expect(isinstance(ent, dict), where, f"entry {i} must be an object")
        _expect(isinstance(ent.get("id"), str), where, f"entry {i} needs a string id")
        _expect(isinstance(ent.get("dim"), int) and ent["dim"] >= 1, where,
                f"entry {i} needs a positive integer dim")
        if ent.get("trivial", False):
            _expect(trivial_id is None, where, "more than one trivial entry")
            trivial_id = ent["id"]
        entries.append((ent["id"], ent["dim"]))
    _expect(trivial_id is not None, where, "no trivial entry")
    try:
        return make_table(entries, trivial_id=trivial_id)
    except ValueError as exc:
        raise SchemaError(f"{where}: {exc}") from None


def blocks_to_obj(table, blocks) -> dict:
    return {table.encode(lab): matrix_to_obj(blk) for lab, blk in blocks.items()}


def blocks_from_obj(table, obj, where: str) -> dict:
    _expect(isinstance(obj, dict), where, "'blocks' must be an object")
    out = {}
    for key, mat in obj.items():
        try:
            if isinstance(table, FreeProductTable):
                label = parse_word(key, table.factor1, table.factor2)
                label = table.decode(table.encode(label))
            else:
                label = table.decode(key)
        except (KeyError, ValueError) as exc:
            raise SchemaError(f"{where}: unknown block key {key!r} ({exc})") from None
        out[label] = matrix_from_obj(mat, f"{where}.blocks[{key!r}]")
    return out


def family_to_obj(F: MatrixFamily) -> dict:
    return {
        "table": table_to_obj(F.table),
        "blocks": blocks_to_obj(F.table, F.blocks),
        "normalized": F.normalized,
    }


def family_from_obj(obj, where: str = "family") -> MatrixFamily:
    _expect(isinstance(obj, dict), where, "must be an object")
    _expect("table" in obj and "blocks" in obj, where, "needs 'table' and 'blocks'")
    table = table_from_obj(obj["table"], where + ".table")
    blocks = blocks_from_obj(table, obj["blocks"], where)
    normalized = obj.get("normalized", False)
    _expect(isinstance(normalized, bool), where, "'normalized' must be a boolean")
    try:
        return MatrixFamily(table, blocks, normalized=normalized)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def generator_to_obj(L: GeneratingFunctional) -> dict:
    return {
        "kind": "generator",
        "table": table_to_obj(L.table),
        "blocks": blocks_to_obj(L.table, L.blocks),
    }


def generator_from_obj(obj, where: str = "generator") -> GeneratingFunctional:
    _expect(isinstance(obj, dict), where, "must be an object")
    _expect(obj.get("kind") == "generator", where, "needs \"kind\": \"generator\"")
    _expect("table" in obj and "blocks" in obj, where, "needs 'table' and 'blocks'")
    table = table_from_obj(obj["table"], where + ".table")
    blocks = blocks_from_obj(table, obj["blocks"], where)
    try:
        return GeneratingFunctional(table, blocks)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def cocycle_to_obj(c: CocycleMatrices) -> dict:
    return {
        "kind": "cocycle",
        "table": table_to_obj(c.table),
        "blocks": blocks_to_obj(c.table, c.blocks),
    }


def cocycle_from_obj(obj, where: str = "cocycle") -> CocycleMatrices:
    _expect(isinstance(obj, dict), where, "must be an object")
    _expect(obj.get("kind") == "cocycle", where, "needs \"kind\": \"cocycle\"")
    _expect("table" in obj and "blocks" in obj, where, "needs 'table' and 'blocks'")
    table = table_from_obj(obj["table"], where + ".table")
    blocks = blocks_from_obj(table, obj["blocks"], where)
    try:
        return CocycleMatrices(table, blocks)
    except (ValueError, KeyError) as exc:
        raise SchemaError(f"{where}: {exc}") from None


def load_json(path) -> object:
    text = Path(path).read_text()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: malformed JSON ({exc})") from None


def dump_json(obj, path) -> None:
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")
