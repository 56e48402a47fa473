"""Flat ``key = value`` configuration for verification runs.

Grammar (one entry per line)::

    # comment
    key = value

Blank lines and ``#`` comments are ignored; keys may appear at most once.
Rationals are written ``p/q`` or as integers.  Matrices (explicit seed data)
are rows separated by ``;`` with entries separated by ``,``, e.g.
``phi0 = 1,0; 0,1``.  A scalar stands for that multiple of the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import as_matrix, matrix_rows
from .errors import ConfigError

SUITES = (
    "quasidet", "toda-pos", "toda-neg", "almost-hankel", "lemma22", "cor24", "lemma25",
    "bilinear", "painleve-seed", "theorem32", "hamiltonian", "commutative-p2",
)
SEED_MODES = ("random", "trivial", "explicit")
DEEP_SUITES = ("toda-pos", "toda-neg", "theorem32")
EXPLICIT_KEYS = ("phi0", "phi1", "psi0", "psi1")


@dataclass
class Config:
    base_point: Fraction = Fraction(1)
    matrix_dim: int = 2
    series_order: int = 20
    rng_seed: int = 0
    beta: Fraction = Fraction(-1, 2)
    chain_depth: int = 3
    checks: list = field(default_factory=lambda: list(SUITES))
    seed_mode: str = "random"
    explicit: dict = field(default_factory=dict)

    def validate(self) -> Config:
        if self.matrix_dim < 1:
            raise ConfigError("matrix_dim must be a positive integer")
        if self.chain_depth < 1:
            raise ConfigError("chain_depth must be at least 1")
        if self.rng_seed < 0:
            raise ConfigError("rng_seed must be a non-negative integer")
        if self.series_order < 1:
            raise ConfigError("series_order must be positive")
        unknown = [c for c in self.checks if c not in SUITES]
        if unknown:
            raise ConfigError(f"unknown check suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
        if not self.checks:
            raise ConfigError("checks must name at least one suite")
        if self.seed_mode not in SEED_MODES:
            raise ConfigError(f"seed_mode must be one of {', '.join(SEED_MODES)}")
        needed = 2 * self.chain_depth + 6
        deep = [c for c in self.checks if c in DEEP_SUITES]
        if deep and self.series_order < needed:
            raise ConfigError(
                f"series_order = {self.series_order} is too small for chain_depth = {self.chain_depth}: "
                f"suites {', '.join(deep)} need series_order >= 2*chain_depth + 6 = {needed}")
        if self.seed_mode == "trivial" and self.beta != Fraction(-1, 2):
            raise ConfigError("seed_mode = trivial fixes beta = -1/2")
        if self.seed_mode == "explicit":
            missing = [k for k in EXPLICIT_KEYS if k not in self.explicit]
            if missing:
                raise ConfigError(f"seed_mode = explicit requires {', '.join(missing)}")
        elif self.explicit:
            raise ConfigError("phi0/phi1/psi0/psi1 are only allowed with seed_mode = explicit")
        return self

    def echo(self) -> dict:
        out = {
            "base_point": self.base_point,
            "matrix_dim": self.matrix_dim,
            "series_order": self.series_order,
            "rng_seed": self.rng_seed,
            "beta": Fraction(self.beta),
            "chain_depth": self.chain_depth,
            "checks": list(self.checks),
            "seed_mode": self.seed_mode,
        }
        for k, v in self.explicit.items():
            out[k] = [[Fraction(x) for x in row] for row in matrix_rows(v, self.matrix_dim)]
        return out


def _rational(key: str, text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ConfigError(f"{key}: expected a rational like 3/4, got {text!r}") from None


def _integer(key: str, text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {text!r}") from None


def _matrix(key: str, text: str, dim: int) -> tuple:
    rows = [r.strip() for r in text.split(";") if r.strip()]
    try:
        if len(rows) == 1 and "," not in rows[0]:
            return as_matrix(Fraction(rows[0]), dim)
        return as_matrix([[Fraction(e) for e in r.split(",")] for r in rows], dim)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"{key}: cannot read a {dim}x{dim} matrix from {text!r} ({exc})") from None


def parse_config(text: str) -> Config:
    raw = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in raw:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        raw[key] = value

    cfg = Config()
    known = {"base_point", "matrix_dim", "series_order", "rng_seed", "beta", "chain_depth",
             "checks", "seed_mode", *EXPLICIT_KEYS}
    extra = sorted(set(raw) - known)
    if extra:
        raise ConfigError(f"unknown key(s): {', '.join(extra)}")
    if "base_point" in raw:
        cfg.base_point = _rational("base_point", raw["base_point"])
    for key in ("matrix_dim", "series_order", "rng_seed", "chain_depth"):
        if key in raw:
            setattr(cfg, key, _integer(key, raw[key]))
    if "beta" in raw:
        cfg.beta = _rational("beta", raw["beta"])
    if "checks" in raw:
        cfg.checks = [c.strip() for c in raw["checks"].split(",") if c.strip()]
    if "seed_mode" in raw:
        cfg.seed_mode = raw["seed_mode"]
    if cfg.matrix_dim < 1:
        raise ConfigError("matrix_dim must be a positive integer")
    for key in EXPLICIT_KEYS:
        if key in raw:
            cfg.explicit[key] = _matrix(key, raw[key], cfg.matrix_dim)
    return cfg.validate()


PRESETS = {
    "quick": """\
# quick scalar run
base_point = 2
matrix_dim = 1
series_order = 12
rng_seed = 1
beta = 1/3
chain_depth = 2
checks = quasidet, toda-pos, toda-neg, almost-hankel, lemma22, cor24, lemma25, bilinear, painleve-seed, theorem32, hamiltonian, commutative-p2
seed_mode = random
""",
    "full": """\
# noncommuting 2x2 coefficients, chains to depth 3
base_point = 1
matrix_dim = 2
series_order = 16
rng_seed = 7
beta = 1/3
chain_depth = 3
checks = quasidet, toda-pos, toda-neg, almost-hankel, lemma22, cor24, lemma25, bilinear, painleve-seed, theorem32, hamiltonian, commutative-p2
seed_mode = random
""",
}
