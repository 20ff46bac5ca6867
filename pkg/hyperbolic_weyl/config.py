# SPDX-License-Identifier: MIT
import dataclasses, logging, os.path
from dataclasses import dataclass

from .core import ConfigError

log = logging.getLogger("hyperbolic_weyl.config")

METHODS = ("adaptive", "series", "mc")

@dataclass(frozen=True)
class Config:
    tol: float = 1e-8
    budget: int = 20000
    series_order: int = 60
    series_tol: float = 1e-8
    series_cap: int = 4
    samples: int = 1_000_000
    seed: int = 20111109
    chunk: int = 100_000
    methods: tuple = ("adaptive",)
    max_rank: int = 10
    include_twisted: bool = True
    workers: int = 1
    rule_degree: int = 3
    rel_tol: float = 1e-4
    catalog: str = None
    # the adaptive engine also stops only below this fraction of the value
    adaptive_rel_tol: float = 1e-4

    def replace(self, **changes):
        changes = {k: v for k, v in changes.items() if v is not None}
        for k in changes:
            if k not in _FIELDS:
                raise ConfigError(f"unknown configuration key {k!r}")
        cfg = dataclasses.replace(self, **changes)
        cfg.validate()
        return cfg

    def cell_budget(self, n):
        "Adaptive cells for dimension n: `budget` up to n = 4, doubling per dimension above."
        return self.budget << max(0, n - 4)

    def rule_index(self, n):
        # one more Grundmann-Moeller index from n = 7 on
        return self.rule_degree + (1 if n >= 7 else 0)

    def validate(self):
        if self.tol <= 0 or self.series_tol <= 0 or self.rel_tol <= 0 or self.adaptive_rel_tol < 0:
            raise ConfigError("tolerances must be positive")
        if self.budget < 1 or self.series_order < 0 or self.chunk < 1 or self.workers < 1:
            raise ConfigError("budget, series_order, chunk and workers must be positive")
        if self.rule_degree < 1:
            raise ConfigError("rule_degree must be at least 1")
        for m in self.methods:
            if m not in METHODS:
                raise ConfigError(f"unknown method {m!r}; expected one of {', '.join(METHODS)}")

_FIELDS = {f.name: f for f in dataclasses.fields(Config)}

def parse_methods(text):
    text = text.strip().lower()
    if text == "all":
        return METHODS
    return tuple(x.strip() for x in text.split(",") if x.strip())

def _convert(key, text):
    kind = _FIELDS[key].type
    text = text.strip()
    try:
        if key == "methods":
            return parse_methods(text)
        if key == "catalog":
            return text or None
        if kind in (bool, "bool"):
            if text.lower() in ("1", "true", "yes", "on"):
                return True
            if text.lower() in ("0", "false", "no", "off"):
                return False
            raise ValueError(text)
        if kind in (int, "int"):
            return int(text.replace("_", ""))
        if kind in (float, "float"):
            return float(text)
    except ValueError:
        raise ConfigError(f"bad value {text!r} for {key}")
    return text

def load_config(path, base=None):
    "Read key=value lines into a Config; '#' starts a comment."
    cfg = base or Config()
    if not os.path.exists(path):
        raise ConfigError(f"config file {path} does not exist")
    changes = {}
    with open(path, "r") as fd:
        for lineno, line in enumerate(fd, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            if key not in _FIELDS:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
            changes[key] = _convert(key, value)
            log.info(f"config {key} = {changes[key]!r}")
    return cfg.replace(**changes)
