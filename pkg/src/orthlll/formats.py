"""Matrix text files and JSON reduction traces.

Matrix file: first line ``"rows cols"``, then one line per row with the
entries as decimal integers separated by single spaces. Lines starting with
``#`` are comments. Writers always emit the canonical form, so output is
byte-reproducible.
"""

import hashlib
import json

import mpmath

from .lll import Event, replay
from .potential import PRECISION, potential_k

__all__ = [
    "MatrixFormatError",
    "parse_matrix",
    "read_matrix",
    "format_matrix",
    "digest",
    "build_trace",
    "load_trace",
    "replay_trace",
]


class MatrixFormatError(ValueError):
    pass


def parse_matrix(text):
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MatrixFormatError("empty matrix file")
    try:
        header = [int(x) for x in lines[0].split()]
    except ValueError as exc:
        raise MatrixFormatError(f"bad header: {lines[0]!r}") from exc
    if len(header) != 2 or min(header) < 1:
        raise MatrixFormatError(f"bad header: {lines[0]!r}")
    rows, cols = header
    body = lines[1:]
    if len(body) != rows:
        raise MatrixFormatError(f"expected {rows} rows, found {len(body)}")
    out = []
    for ln in body:
        try:
            row = [int(x) for x in ln.split()]
        except ValueError as exc:
            raise MatrixFormatError(f"non-integer entry in {ln!r}") from exc
        if len(row) != cols:
            raise MatrixFormatError(f"expected {cols} entries, found {len(row)} in {ln!r}")
        out.append(row)
    return out


def read_matrix(path):
    with open(path, encoding="utf-8") as fh:
        return parse_matrix(fh.read())


def format_matrix(rows):
    ncols = len(rows[0]) if rows else 0
    lines = [f"{len(rows)} {ncols}"]
    lines += [" ".join(str(x) for x in row) for row in rows]
    return "\n".join(lines) + "\n"


def digest(rows):
    return hashlib.sha256(format_matrix(rows).encode()).hexdigest()


def _num(x):
    return mpmath.nstr(x, 40, strip_zeros=False)


def build_trace(input_rows, output_rows, trace, n, k=None, K=None, bounds=None, prec=PRECISION):
    """JSON-ready dict describing one reduction.

    ``input_rows``/``output_rows`` are the row-major matrices whose columns
    are the input and output bases. Potentials for every ``k`` in ``1..n``
    are stored around each swap and at both endpoints.
    """
    doc = {
        "input_digest": digest(input_rows),
        "output_digest": digest(output_rows),
        "n": n,
        "k": k,
        "K": None if K is None else str(K),
        "delta": f"{trace.delta.numerator}/{trace.delta.denominator}",
        "input": [[str(x) for x in r] for r in input_rows],
        "events": [e.to_dict() for e in trace.events],
        "swap_count": trace.swap_count,
    }
    if trace.checkpoints is not None:
        nb = len(trace.initial_norms)
        pots = []
        for idx, cp in enumerate(trace.checkpoints):
            for kk in range(1, nb + 1):
                pots.append(
                    {
                        "swap": idx,
                        "step": cp.step,
                        "k": kk,
                        "before": _num(potential_k(cp.before, kk, prec)),
                        "after": _num(potential_k(cp.after, kk, prec)),
                    }
                )
        doc["potentials"] = pots
        doc["potential_endpoints"] = [
            {
                "k": kk,
                "input": _num(potential_k(trace.initial_norms, kk, prec)),
                "output": _num(potential_k(trace.final_norms, kk, prec)),
            }
            for kk in range(1, nb + 1)
        ]
    if bounds is not None:
        doc["bounds"] = bounds.to_dict()
    return doc


def dump_trace(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_trace(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def replay_trace(doc, input_rows=None):
    """Re-apply the recorded events; returns the output matrix (rows).

    Raises ``ValueError`` when the input or the replayed output does not match
    the recorded digests.
    """
    if input_rows is None:
        input_rows = [[int(x) for x in r] for r in doc["input"]]
    if digest(input_rows) != doc["input_digest"]:
        raise ValueError("input digest mismatch")
    cols = [list(c) for c in zip(*input_rows)]
    out_cols = replay(cols, [Event.from_dict(e) for e in doc["events"]])
    out_rows = [list(r) for r in zip(*out_cols)]
    if digest(out_rows) != doc["output_digest"]:
        raise ValueError("output digest mismatch")
    return out_rows
