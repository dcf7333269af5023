"""System-spec file parsing.

A system spec is a JSON object with a ``representation`` field:

* ``"params"``: physical parameters; requires ``n``, ``m`` and the four
  matrices ``omega_minus``, ``omega_plus``, ``c_minus``, ``c_plus``.
* ``"annihilation"`` / ``"quadrature"``: a state-space quadruple given
  directly as matrices ``A``, ``B``, ``C``, ``D``.

Matrix entries are ``[re, im]`` pairs whose components are either JSON
numbers (floating input) or strings like ``"3/4"`` (exact Gaussian
rational input).  A system is exact only if every component of every
entry is exact.

A feedback spec (for the SISO coherent-feedback commands) is a JSON
object with ``omega_plus`` and either both ``c_q`` and ``c_p`` or the
single ``c_product``, all in the same entry format.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .errors import SpecFileError
from .feedback import QuadPlantParams
from .model import QSystemParams, StateSpace
from .rational import GaussianRational

__all__ = [
    "parse_entry",
    "parse_matrix",
    "load_system_spec",
    "load_feedback_spec",
    "LoadedSystem",
]


def _parse_component(x, where):
    """One real component: JSON number (float path) or 'p/q' string (exact)."""
    if isinstance(x, bool):
        raise SpecFileError("booleans are not numbers", field=where)
    if isinstance(x, int):
        return Fraction(x), True
    if isinstance(x, float):
        return x, False
    if isinstance(x, str):
        try:
            return Fraction(x), True
        except (ValueError, ZeroDivisionError) as e:
            raise SpecFileError(f"bad exact component {x!r}: {e}", field=where) from e
    raise SpecFileError(f"component must be number or 'p/q' string, got {x!r}", field=where)


def parse_entry(e, where):
    """One matrix entry [re, im] -> (GaussianRational or complex, exact)."""
    if not isinstance(e, (list, tuple)) or len(e) != 2:
        raise SpecFileError(
            f"matrix entry must be a [re, im] pair, got {e!r}", field=where
        )
    re, re_exact = _parse_component(e[0], where)
    im, im_exact = _parse_component(e[1], where)
    if re_exact and im_exact:
        return GaussianRational(re, im), True
    return complex(float(re), float(im)), False


def parse_matrix(rows, field):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise SpecFileError("matrix must be a list of rows", field=field)
    out = []
    exact = True
    for i, row in enumerate(rows):
        prow = []
        for j, e in enumerate(row):
            val, ex = parse_entry(e, f"{field}[{i}][{j}]")
            exact = exact and ex
            prow.append(val)
        out.append(prow)
    if not exact:
        out = [[complex(v) for v in row] for row in out]
    return out, exact


class LoadedSystem:
    """A parsed spec: the constructed object plus the raw JSON for echoing."""

    def __init__(self, kind, system, raw, exact, path):
        self.kind = kind  # "params" | "state-space"
        self.system = system
        self.raw = raw
        self.exact = exact
        self.path = path

    def state_space(self) -> StateSpace:
        from .model import build_state_space

        if self.kind == "params":
            return build_state_space(self.system)
        return self.system


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError as e:
        raise SpecFileError(f"spec file not found: {path}") from e
    except json.JSONDecodeError as e:
        raise SpecFileError(f"invalid JSON in {path}: line {e.lineno}: {e.msg}") from e


def load_system_spec(path) -> LoadedSystem:
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise SpecFileError("spec must be a JSON object")
    rep = raw.get("representation")
    if rep == "params":
        missing = [
            k
            for k in ("n", "m", "omega_minus", "omega_plus", "c_minus", "c_plus")
            if k not in raw
        ]
        if missing:
            raise SpecFileError(f"missing fields: {', '.join(missing)}")
        mats = {}
        exact = True
        for k in ("omega_minus", "omega_plus", "c_minus", "c_plus"):
            mats[k], ex = parse_matrix(raw[k], k)
            exact = exact and ex
        try:
            params = QSystemParams.create(
                mats["omega_minus"], mats["omega_plus"], mats["c_minus"], mats["c_plus"]
            )
        except Exception as e:
            raise SpecFileError(f"invalid parameters: {e}") from e
        if params.n != raw["n"] or params.m != raw["m"]:
            raise SpecFileError(
                f"declared (n, m) = ({raw['n']}, {raw['m']}) but matrices give "
                f"({params.n}, {params.m})"
            )
        return LoadedSystem("params", params, raw, exact, path)
    if rep in ("annihilation", "quadrature"):
        missing = [k for k in ("A", "B", "C", "D") if k not in raw]
        if missing:
            raise SpecFileError(f"missing fields: {', '.join(missing)}")
        mats = {}
        exact = True
        for k in ("A", "B", "C", "D"):
            mats[k], ex = parse_matrix(raw[k], k)
            exact = exact and ex
        try:
            ss = StateSpace.from_matrices(
                mats["A"], mats["B"], mats["C"], mats["D"], representation=rep
            )
        except Exception as e:
            raise SpecFileError(f"invalid state space: {e}") from e
        return LoadedSystem("state-space", ss, raw, exact, path)
    raise SpecFileError(
        f"representation must be 'params', 'annihilation' or 'quadrature', "
        f"got {rep!r}",
        field="representation",
    )


def load_feedback_spec(path):
    raw = _load_json(path)
    if not isinstance(raw, dict):
        raise SpecFileError("feedback spec must be a JSON object")
    if "omega_plus" not in raw:
        raise SpecFileError("missing field omega_plus")
    w, _ = parse_entry(raw["omega_plus"], "omega_plus")
    w = GaussianRational.of(w)
    try:
        if "c_product" in raw:
            cprod, _ = parse_entry(raw["c_product"], "c_product")
            params = QuadPlantParams.from_coupling_product(w, GaussianRational.of(cprod))
        elif "c_q" in raw and "c_p" in raw:
            cq, _ = parse_entry(raw["c_q"], "c_q")
            cp, _ = parse_entry(raw["c_p"], "c_p")
            params = QuadPlantParams.create(
                w, GaussianRational.of(cq), GaussianRational.of(cp)
            )
        else:
            raise SpecFileError("need either c_product or both c_q and c_p")
    except SpecFileError:
        raise
    except Exception as e:
        raise SpecFileError(f"invalid feedback parameters: {e}") from e
    return params, raw
