"""
YAML configuration: validation, normalisation, presets and model builders.

A configuration is a nested mapping mirroring the type tree::

    space:     {dim: 3, label: demo}
    evolution: {kind: scalar_contraction, omega: 1.0}
    sigma:     {kind: constant_diag, diag: identity}
    symbol:    {kind: sum, terms: [{kind: gaussian, R: identity},
                                   {kind: compound_poisson, atoms: [{mass: 0.5, jump: e1}]}]}
    quad:      {rel_tol: 1.0e-9}
    probes:    {count: 16, seed: 0}
    law:       {kind: extremal, kappa: {kind: from_initial, x0: [0.5, 0, 0]}}
    experiment:
      checks: [ck, flow]
      times: {random: 100, seed: 1, low: -3, high: 3}
      points: [0.0]
      mc: {N: 100000, grid_steps: 256, seed: 0}
    output:    {directory: out, formats: [csv, json]}

Vectors are coordinate lists or basis shorthands ``e2`` / ``-e2`` / ``zero``;
diagonal operators are lists, a scalar, or ``identity``. Validation errors
carry the dotted field path and, when parsed from text, the source line.
"""

from __future__ import annotations

import copy
import hashlib
import json
import math
import re
from dataclasses import dataclass

import numpy as np
import yaml

from . import symbols as sym
from .entrance import Extremal, FromInitial, Mixture, Shifted, Zero
from .errors import ConfigError
from .evolution import ConstantDiag, DiagonalSemigroup, PeriodicScalar, PeriodicScalarMod, ScalarContraction
from .mehler import MehlerModel, QuadConfig
from .space import ProbeSet, TruncatedSpace

CHECKS = (
    "ck",
    "flow",
    "mean",
    "symmetry",
    "periodic",
    "sampler-vs-cf",
    "definiteness",
    "tail-moment",
    "hypothesis-certificates",
)

_BASIS = re.compile(r"^(-?)e(\d+)$")


class _Validator:
    def __init__(self, dim=None):
        self.dim = dim

    def fail(self, path, msg):
        raise ConfigError(msg, field=path)

    def mapping(self, node, path, required=(), optional=()):
        if not isinstance(node, dict):
            self.fail(path, f"expected a mapping, got {type(node).__name__}")
        unknown = set(node) - set(required) - set(optional)
        if unknown:
            self.fail(path, f"unknown field(s) {sorted(unknown)}")
        for key in required:
            if key not in node:
                self.fail(_join(path, key), "missing required field")
        return node

    def number(self, node, path, lo=None, hi=None, lo_open=False, hi_open=False, integer=False):
        if isinstance(node, str) and node.strip().lower() in ("-inf", "inf", "+inf"):
            node = float(node)
        if isinstance(node, bool) or not isinstance(node, (int, float)):
            self.fail(path, f"expected a number, got {node!r}")
        if integer:
            if isinstance(node, float) and not node.is_integer():
                self.fail(path, f"expected an integer, got {node!r}")
            node = int(node)
        else:
            node = float(node)
            if math.isnan(node):
                self.fail(path, "NaN is not allowed")
        if lo is not None and (node < lo or (lo_open and node == lo)):
            self.fail(path, f"must be {'>' if lo_open else '>='} {lo}, got {node}")
        if hi is not None and (node > hi or (hi_open and node == hi)):
            self.fail(path, f"must be {'<' if hi_open else '<='} {hi}, got {node}")
        return node

    def finite(self, node, path, **kw):
        x = self.number(node, path, **kw)
        if not math.isfinite(x):
            self.fail(path, "must be finite")
        return x

    def vector(self, node, path):
        if isinstance(node, str):
            text = node.strip()
            if text in ("0", "zero"):
                return text
            m = _BASIS.match(text)
            if not m:
                self.fail(path, f"unrecognised vector shorthand {node!r} (use eK, -eK or zero)")
            if not 1 <= int(m.group(2)) <= self.dim:
                self.fail(path, f"basis index {m.group(2)} outside 1..{self.dim}")
            return text
        if not isinstance(node, list):
            self.fail(path, "expected a coordinate list or basis shorthand")
        if len(node) != self.dim:
            self.fail(path, f"expected {self.dim} coordinates, got {len(node)}")
        return [self.finite(x, f"{path}[{i}]") for i, x in enumerate(node)]

    def diag(self, node, path, nonneg=False, positive=False):
        if isinstance(node, str):
            if node.strip() != "identity":
                self.fail(path, f"unrecognised operator shorthand {node!r} (use identity)")
            return "identity"
        if isinstance(node, (int, float)) and not isinstance(node, bool):
            vals = [self.finite(node, path)]
            out = vals[0]
        else:
            if not isinstance(node, list) or len(node) != self.dim:
                self.fail(path, f"expected {self.dim} diagonal entries, a scalar or 'identity'")
            vals = out = [self.finite(x, f"{path}[{i}]") for i, x in enumerate(node)]
        if nonneg and any(v < 0 for v in vals):
            self.fail(path, "entries must be nonnegative")
        if positive and any(v <= 0 for v in vals):
            self.fail(path, "entries must be positive")
        return out


def _join(path, key):
    return f"{path}.{key}" if path else str(key)


def _vec(spec, dim) -> np.ndarray:
    if isinstance(spec, str):
        if spec in ("0", "zero"):
            return np.zeros(dim)
        m = _BASIS.match(spec)
        v = np.zeros(dim)
        v[int(m.group(2)) - 1] = -1.0 if m.group(1) else 1.0
        return v
    return np.array(spec, dtype=float)


def _diag(spec, dim) -> np.ndarray:
    if spec == "identity":
        return np.ones(dim)
    if isinstance(spec, (int, float)):
        return np.full(dim, float(spec))
    return np.array(spec, dtype=float)


def parse_vector(text: str, dim: int) -> np.ndarray:
    """Command-line vector: ``e1``, ``-e2``, ``zero`` or comma-separated numbers."""
    text = text.strip()
    if _BASIS.match(text) or text in ("0", "zero"):
        return _vec(_Validator(dim).vector(text, "a"), dim)
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    try:
        coords = [float(p) for p in parts]
    except ValueError:
        raise ConfigError(f"not a vector: {text!r} (use eK, -eK, zero or comma-separated numbers)", field="a") from None
    return _vec(_Validator(dim).vector(coords, "a"), dim)


# normalisation ---------------------------------------------------------------


def _norm_evolution(v, node, path):
    kind = v.mapping(node, path, required=("kind",), optional=("omega", "eigs", "omega0", "amp", "period"))["kind"]
    if kind == "scalar_contraction":
        v.mapping(node, path, required=("kind", "omega"))
        return {"kind": kind, "omega": v.finite(node["omega"], _join(path, "omega"), lo=0, lo_open=True)}
    if kind == "diagonal_semigroup":
        v.mapping(node, path, required=("kind", "eigs"))
        eigs = node["eigs"]
        if not isinstance(eigs, list):
            v.fail(_join(path, "eigs"), "expected a list of positive eigenvalues")
        return {"kind": kind, "eigs": v.diag(eigs, _join(path, "eigs"), positive=True)}
    if kind == "dirichlet_laplacian":
        v.mapping(node, path, required=("kind",))
        return {"kind": kind}
    if kind == "periodic_scalar":
        v.mapping(node, path, required=("kind", "omega0", "amp", "period"))
        return {
            "kind": kind,
            "omega0": v.finite(node["omega0"], _join(path, "omega0"), lo=0, lo_open=True),
            "amp": v.finite(node["amp"], _join(path, "amp"), lo=0, hi=1, hi_open=True),
            "period": v.finite(node["period"], _join(path, "period"), lo=0, lo_open=True),
        }
    v.fail(_join(path, "kind"), f"unknown evolution kind {kind!r}")


def _norm_sigma(v, node, path):
    if node is None:
        return {"kind": "constant_diag", "diag": "identity"}
    kind = v.mapping(node, path, required=("kind",), optional=("diag", "base", "amp", "period"))["kind"]
    if kind == "constant_diag":
        v.mapping(node, path, required=("kind",), optional=("diag",))
        return {"kind": kind, "diag": v.diag(node.get("diag", "identity"), _join(path, "diag"))}
    if kind == "periodic_scalar_mod":
        v.mapping(node, path, required=("kind", "amp", "period"), optional=("base",))
        return {
            "kind": kind,
            "base": v.diag(node.get("base", "identity"), _join(path, "base")),
            "amp": v.finite(node["amp"], _join(path, "amp"), lo=0, hi=1, hi_open=True),
            "period": v.finite(node["period"], _join(path, "period"), lo=0, lo_open=True),
        }
    v.fail(_join(path, "kind"), f"unknown sigma kind {kind!r}")


def _alpha(v, node, path):
    return v.finite(node, path, lo=1, hi=2, lo_open=True, hi_open=True)


def _norm_symbol(v, node, path):
    kind = v.mapping(node, path, required=("kind",), optional=("R", "S", "alpha", "atoms", "terms"))["kind"]
    if kind == "gaussian":
        v.mapping(node, path, required=("kind",), optional=("R",))
        return {"kind": kind, "R": v.diag(node.get("R", "identity"), _join(path, "R"), nonneg=True)}
    if kind == "stable_norm":
        v.mapping(node, path, required=("kind", "alpha"), optional=("S",))
        return {
            "kind": kind,
            "alpha": _alpha(v, node["alpha"], _join(path, "alpha")),
            "S": v.diag(node.get("S", "identity"), _join(path, "S"), nonneg=True),
        }
    if kind == "stable_mixing":
        v.mapping(node, path, required=("kind", "alpha", "atoms"))
        atoms = _atom_list(v, node["atoms"], _join(path, "atoms"), "weight", "x")
        return {"kind": kind, "alpha": _alpha(v, node["alpha"], _join(path, "alpha")), "atoms": atoms}
    if kind == "compound_poisson":
        v.mapping(node, path, required=("kind", "atoms"))
        return {"kind": kind, "atoms": _atom_list(v, node["atoms"], _join(path, "atoms"), "mass", "jump")}
    if kind == "sum":
        v.mapping(node, path, required=("kind", "terms"))
        terms = node["terms"]
        if not isinstance(terms, list) or not terms:
            v.fail(_join(path, "terms"), "expected a non-empty list of symbols")
        return {"kind": kind, "terms": [_norm_symbol(v, t, f"{path}.terms[{i}]") for i, t in enumerate(terms)]}
    v.fail(_join(path, "kind"), f"unknown symbol kind {kind!r}")


def _atom_list(v, node, path, wkey, xkey):
    if not isinstance(node, list) or not node:
        v.fail(path, "expected a non-empty list of atoms")
    out = []
    for i, atom in enumerate(node):
        p = f"{path}[{i}]"
        v.mapping(atom, p, required=(wkey, xkey))
        out.append({wkey: v.finite(atom[wkey], _join(p, wkey), lo=0, lo_open=True), xkey: v.vector(atom[xkey], _join(p, xkey))})
    return out


def _norm_quad(v, node, path):
    node = {} if node is None else node
    v.mapping(node, path, optional=("rel_tol", "abs_tol", "max_subdivisions", "horizon_slack"))
    d = QuadConfig()
    return {
        "rel_tol": v.finite(node.get("rel_tol", d.rel_tol), _join(path, "rel_tol"), lo=0, lo_open=True),
        "abs_tol": v.finite(node.get("abs_tol", d.abs_tol), _join(path, "abs_tol"), lo=0, lo_open=True),
        "max_subdivisions": v.number(node.get("max_subdivisions", d.max_subdivisions), _join(path, "max_subdivisions"), lo=1, integer=True),
        "horizon_slack": v.finite(node.get("horizon_slack", d.horizon_slack), _join(path, "horizon_slack"), lo=0, lo_open=True),
    }


def _norm_probes(v, node, path):
    node = {} if node is None else node
    v.mapping(node, path, optional=("count", "seed"))
    return {
        "count": v.number(node.get("count", 16), _join(path, "count"), lo=16, integer=True),
        "seed": v.number(node.get("seed", 0), _join(path, "seed"), lo=0, integer=True),
    }


def _norm_kappa(v, node, path):
    kind = v.mapping(node, path, required=("kind",), optional=("x0", "base", "offset"))["kind"]
    if kind == "zero":
        v.mapping(node, path, required=("kind",))
        return {"kind": kind}
    if kind == "from_initial":
        v.mapping(node, path, required=("kind", "x0"))
        return {"kind": kind, "x0": v.vector(node["x0"], _join(path, "x0"))}
    if kind == "shifted":
        v.mapping(node, path, required=("kind", "base", "offset"))
        return {"kind": kind, "base": _norm_kappa(v, node["base"], _join(path, "base")), "offset": v.vector(node["offset"], _join(path, "offset"))}
    v.fail(_join(path, "kind"), f"unknown kappa kind {kind!r}")


def _norm_law(v, node, path):
    if node is None:
        return None
    kind = v.mapping(node, path, required=("kind",), optional=("kappa", "components"))["kind"]
    if kind == "extremal":
        v.mapping(node, path, required=("kind", "kappa"))
        return {"kind": kind, "kappa": _norm_kappa(v, node["kappa"], _join(path, "kappa"))}
    if kind == "mixture":
        v.mapping(node, path, required=("kind", "components"))
        comps = node["components"]
        if not isinstance(comps, list) or not comps:
            v.fail(_join(path, "components"), "expected a non-empty list")
        out = []
        for i, c in enumerate(comps):
            p = f"{path}.components[{i}]"
            v.mapping(c, p, required=("weight", "kappa"))
            out.append({"weight": v.finite(c["weight"], _join(p, "weight"), lo=0, lo_open=True), "kappa": _norm_kappa(v, c["kappa"], _join(p, "kappa"))})
        total = math.fsum(c["weight"] for c in out)
        if abs(total - 1.0) > 1e-12:
            v.fail(_join(path, "components"), f"weights must sum to 1, got {total}")
        return {"kind": kind, "components": out}
    v.fail(_join(path, "kind"), f"unknown law kind {kind!r}")


def _norm_times(v, node, path):
    if node is None:
        return {"random": 10, "seed": 0, "low": -2.0, "high": 2.0}
    if isinstance(node, dict):
        v.mapping(node, path, required=("random",), optional=("seed", "low", "high"))
        low = v.finite(node.get("low", -2.0), _join(path, "low"))
        high = v.finite(node.get("high", 2.0), _join(path, "high"))
        if not low < high:
            v.fail(path, "need low < high")
        return {
            "random": v.number(node["random"], _join(path, "random"), lo=0, integer=True),
            "seed": v.number(node.get("seed", 0), _join(path, "seed"), lo=0, integer=True),
            "low": low,
            "high": high,
        }
    if not isinstance(node, list):
        v.fail(path, "expected a list of [s, r, t] triples or a {random: n} mapping")
    out = []
    for i, trip in enumerate(node):
        p = f"{path}[{i}]"
        if not isinstance(trip, list) or len(trip) != 3:
            v.fail(p, "expected an [s, r, t] triple")
        s = v.number(trip[0], f"{p}[0]", hi=math.inf, hi_open=True)
        r = v.finite(trip[1], f"{p}[1]")
        t = v.finite(trip[2], f"{p}[2]")
        if not s <= r <= t:
            v.fail(p, f"times must satisfy s <= r <= t, got {trip}")
        out.append([s, r, t])
    return out


def _norm_experiment(v, node, path):
    node = {} if node is None else node
    v.mapping(node, path, optional=("name", "checks", "times", "points", "tolerances", "mc", "periodic_n"))
    checks = node.get("checks", [])
    if not isinstance(checks, list):
        v.fail(_join(path, "checks"), "expected a list of check names")
    for i, c in enumerate(checks):
        if c not in CHECKS:
            v.fail(f"{path}.checks[{i}]", f"unknown check {c!r}; known: {', '.join(CHECKS)}")
    tol = node.get("tolerances", {}) or {}
    v.mapping(tol, _join(path, "tolerances"), optional=CHECKS)
    points = node.get("points", [0.0])
    if not isinstance(points, list) or not points:
        v.fail(_join(path, "points"), "expected a non-empty list of times")
    mc = node.get("mc", {}) or {}
    v.mapping(mc, _join(path, "mc"), optional=("N", "grid_steps", "seed"))
    return {
        "name": str(node.get("name", "experiment")),
        "checks": list(checks),
        "times": _norm_times(v, node.get("times"), _join(path, "times")),
        "points": [v.finite(p, f"{path}.points[{i}]") for i, p in enumerate(points)],
        "tolerances": {k: v.finite(x, f"{path}.tolerances.{k}", lo=0) for k, x in tol.items()},
        "mc": {
            "N": v.number(mc.get("N", 20000), _join(path, "mc.N"), lo=1, integer=True),
            "grid_steps": v.number(mc.get("grid_steps", 256), _join(path, "mc.grid_steps"), lo=4, integer=True),
            "seed": v.number(mc.get("seed", 0), _join(path, "mc.seed"), lo=0, integer=True),
        },
        "periodic_n": v.number(node.get("periodic_n", 10), _join(path, "periodic_n"), lo=1, integer=True),
    }


def _norm_output(v, node, path):
    node = {} if node is None else node
    v.mapping(node, path, optional=("directory", "formats"))
    formats = node.get("formats", ["csv", "json"])
    if not isinstance(formats, list) or any(f not in ("csv", "json") for f in formats):
        v.fail(_join(path, "formats"), "formats must be a list drawn from [csv, json]")
    return {"directory": str(node.get("directory", "out")), "formats": list(formats)}


def normalize(doc) -> dict:
    """Validate a raw config mapping and fill defaults."""
    v = _Validator()
    v.mapping(doc, "", required=("space", "evolution", "symbol"), optional=("sigma", "quad", "probes", "law", "experiment", "output"))
    sp = v.mapping(doc["space"], "space", required=("dim",), optional=("label",))
    dim = v.number(sp["dim"], "space.dim", lo=1, hi=4096, integer=True)
    v.dim = dim
    out = {
        "space": {"dim": dim, "label": str(sp.get("label", "H"))},
        "evolution": _norm_evolution(v, doc["evolution"], "evolution"),
        "sigma": _norm_sigma(v, doc.get("sigma"), "sigma"),
        "symbol": _norm_symbol(v, doc["symbol"], "symbol"),
        "quad": _norm_quad(v, doc.get("quad"), "quad"),
        "probes": _norm_probes(v, doc.get("probes"), "probes"),
        "law": _norm_law(v, doc.get("law"), "law"),
        "experiment": _norm_experiment(v, doc.get("experiment"), "experiment"),
        "output": _norm_output(v, doc.get("output"), "output"),
    }
    if out["law"] is None:
        del out["law"]
    return out


# config object -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Config:
    data: dict

    def __eq__(self, other):
        return isinstance(other, Config) and self.data == other.data

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.data, sort_keys=False, default_flow_style=None)

    def to_dict(self) -> dict:
        return copy.deepcopy(self.data)

    def digest(self) -> str:
        canon = json.dumps(self.data, sort_keys=True, separators=(",", ":"), allow_nan=True)
        return hashlib.sha256(canon.encode()).hexdigest()[:16]

    @property
    def dim(self) -> int:
        return self.data["space"]["dim"]

    def space(self) -> TruncatedSpace:
        return TruncatedSpace(self.dim, self.data["space"]["label"])

    def model(self) -> MehlerModel:
        return build_model(self.data)

    def law(self, model: MehlerModel | None = None):
        model = model or self.model()
        spec = self.data.get("law")
        if spec is None:
            return None
        return build_law(spec, model)

    def probes(self) -> ProbeSet:
        p = self.data["probes"]
        return ProbeSet.build(self.space(), p["seed"], n_random=p["count"])


def _line_of(text: str, field_path: str | None):
    if not field_path:
        return None
    try:
        node = yaml.compose(text)
    except yaml.YAMLError:
        return None
    line = None
    for token in re.findall(r"[^.\[\]]+|\[\d+\]", field_path):
        if node is None:
            break
        if token.startswith("["):
            idx = int(token[1:-1])
            if isinstance(node, yaml.SequenceNode) and idx < len(node.value):
                node = node.value[idx]
                line = node.start_mark.line + 1
            else:
                break
        elif isinstance(node, yaml.MappingNode):
            nxt = None
            for k, val in node.value:
                if k.value == token:
                    nxt = val
                    line = k.start_mark.line + 1
            node = nxt
        else:
            break
    return line


def parse_config(text: str) -> Config:
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        raise ConfigError(f"YAML syntax error: {getattr(exc, 'problem', exc)}", line=mark.line + 1 if mark else None) from None
    try:
        return Config(normalize(doc))
    except ConfigError as exc:
        raise ConfigError(exc.message, field=exc.field, line=_line_of(text, exc.field)) from None


def load_config(path) -> Config:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())


def from_dict(doc: dict) -> Config:
    return Config(normalize(copy.deepcopy(doc)))


# builders ----------------------------------------------------------------------


def build_symbol(spec: dict, dim: int) -> sym.LevySymbol:
    kind = spec["kind"]
    if kind == "gaussian":
        return sym.GaussianForm(_diag(spec["R"], dim))
    if kind == "stable_norm":
        return sym.StableNorm(spec["alpha"], _diag(spec["S"], dim))
    if kind == "stable_mixing":
        return sym.StableMixing(spec["alpha"], [a["weight"] for a in spec["atoms"]], [_vec(a["x"], dim) for a in spec["atoms"]])
    if kind == "compound_poisson":
        return sym.CompoundPoisson([a["mass"] for a in spec["atoms"]], [_vec(a["jump"], dim) for a in spec["atoms"]])
    return sym.Sum(tuple(build_symbol(t, dim) for t in spec["terms"]))


def build_model(data: dict) -> MehlerModel:
    dim = data["space"]["dim"]
    space = TruncatedSpace(dim, data["space"]["label"])
    ev = data["evolution"]
    if ev["kind"] == "scalar_contraction":
        U = ScalarContraction(ev["omega"])
    elif ev["kind"] == "diagonal_semigroup":
        U = DiagonalSemigroup(_diag(ev["eigs"], dim))
    elif ev["kind"] == "dirichlet_laplacian":
        U = DiagonalSemigroup.dirichlet_laplacian(dim)
    else:
        U = PeriodicScalar(ev["omega0"], ev["amp"], ev["period"])
    sg = data["sigma"]
    if sg["kind"] == "constant_diag":
        sigma = ConstantDiag(_diag(sg["diag"], dim))
    else:
        sigma = PeriodicScalarMod(_diag(sg["base"], dim), sg["amp"], sg["period"])
    return MehlerModel(space, U, sigma, build_symbol(data["symbol"], dim), QuadConfig(**data["quad"]))


def build_kappa(spec: dict, model: MehlerModel):
    dim = model.space.dim
    if spec["kind"] == "zero":
        return Zero(dim)
    if spec["kind"] == "from_initial":
        return FromInitial(model.U, _vec(spec["x0"], dim))
    return Shifted(build_kappa(spec["base"], model), _vec(spec["offset"], dim))


def build_law(spec: dict, model: MehlerModel):
    if spec["kind"] == "extremal":
        return Extremal(model, build_kappa(spec["kappa"], model))
    return Mixture(model, tuple(c["weight"] for c in spec["components"]), tuple(build_kappa(c["kappa"], model) for c in spec["components"]))


# presets -----------------------------------------------------------------------

_ALL_CHECKS = ["ck", "flow", "mean", "symmetry", "sampler-vs-cf", "definiteness", "tail-moment", "hypothesis-certificates"]


def _preset(label, evolution, symbol, law, sigma=None, dim=3, checks=None, times=None, points=None, N=20000):
    doc = {
        "space": {"dim": dim, "label": label},
        "evolution": evolution,
        "symbol": symbol,
        "probes": {"count": 16, "seed": 11},
        "law": law,
        "experiment": {
            "name": label,
            "checks": list(checks or _ALL_CHECKS),
            "times": times or {"random": 20, "seed": 5, "low": -2.0, "high": 2.0},
            "points": points or [0.0, 0.7],
            "mc": {"N": N, "grid_steps": 256, "seed": 2024},
        },
        "output": {"directory": "out", "formats": ["csv", "json"]},
    }
    if sigma is not None:
        doc["sigma"] = sigma
    return doc


_MIX3 = {
    "kind": "mixture",
    "components": [
        {"weight": 0.5, "kappa": {"kind": "from_initial", "x0": [0.6, -0.2, 0.1]}},
        {"weight": 0.3, "kappa": {"kind": "from_initial", "x0": [-0.4, 0.5, 0.0]}},
        {"weight": 0.2, "kappa": {"kind": "zero"}},
    ],
}

PRESETS: dict[str, dict] = {
    "gaussian-scalar": _preset(
        "gaussian-scalar",
        {"kind": "scalar_contraction", "omega": 1.0},
        {"kind": "gaussian", "R": "identity"},
        {"kind": "extremal", "kappa": {"kind": "from_initial", "x0": [0.5, -0.3, 0.2]}},
    ),
    "stable-scalar": _preset(
        "stable-scalar",
        {"kind": "scalar_contraction", "omega": 1.0},
        {"kind": "stable_norm", "alpha": 1.5, "S": "identity"},
        {"kind": "extremal", "kappa": {"kind": "from_initial", "x0": [0.5, -0.3, 0.2]}},
    ),
    "cp-scalar": _preset(
        "cp-scalar",
        {"kind": "scalar_contraction", "omega": 1.0},
        {"kind": "compound_poisson", "atoms": [{"mass": 0.7, "jump": "e1"}, {"mass": 0.5, "jump": [0.5, -1.5, 0.3]}]},
        {"kind": "extremal", "kappa": {"kind": "from_initial", "x0": [0.5, -0.3, 0.2]}},
    ),
    "gaussian-laplacian": _preset(
        "gaussian-laplacian",
        {"kind": "dirichlet_laplacian"},
        {"kind": "gaussian", "R": "identity"},
        {"kind": "extremal", "kappa": {"kind": "from_initial", "x0": "e1"}},
        dim=6,
        times={"random": 20, "seed": 5, "low": -1.0, "high": 1.0},
    ),
    "periodic-stable": _preset(
        "periodic-stable",
        {"kind": "periodic_scalar", "omega0": 1.0, "amp": 0.5, "period": 1.0},
        {"kind": "stable_norm", "alpha": 1.5, "S": "identity"},
        _MIX3,
        sigma={"kind": "periodic_scalar_mod", "base": "identity", "amp": 0.5, "period": 1.0},
        checks=_ALL_CHECKS + ["periodic"],
    ),
    "stable-mixing": _preset(
        "stable-mixing",
        {"kind": "scalar_contraction", "omega": 1.0},
        {"kind": "stable_mixing", "alpha": 1.5, "atoms": [{"weight": 1.0, "x": "e1"}]},
        {"kind": "extremal", "kappa": {"kind": "from_initial", "x0": [0.5, -0.3, 0.2]}},
    ),
    "corrupted-kappa": _preset(
        "corrupted-kappa",
        {"kind": "scalar_contraction", "omega": 1.0},
        {"kind": "gaussian", "R": "identity"},
        {
            "kind": "extremal",
            "kappa": {"kind": "shifted", "base": {"kind": "from_initial", "x0": [0.5, -0.3, 0.2]}, "offset": [0.1, 0.0, 0.0]},
        },
    ),
}

#: the five models every acceptance criterion runs against
CORE_PRESETS = ("gaussian-scalar", "stable-scalar", "cp-scalar", "gaussian-laplacian", "periodic-stable")


def preset(name: str) -> Config:
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; available: {', '.join(PRESETS)}", field="preset")
    return from_dict(PRESETS[name])
