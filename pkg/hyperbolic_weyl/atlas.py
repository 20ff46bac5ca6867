# SPDX-License-Identifier: MIT
import csv, io, json, logging, math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .core import *
from .cartan import AlgebraId, Catalog, catalog_entry, symmetrize_and_normalize
from .config import Config
from .names import parse_name
from .shape import shape_matrix, classify_hyperbolicity, embed_domain
from .volume import (volume_adaptive, volume_series, volume_montecarlo, closed_form_volume,
                     ADAPTIVE, SERIES, MONTECARLO)
from .lobachevsky import evaluate_closed_form

log = logging.getLogger("hyperbolic_weyl.atlas")

# finite algebras whose over-extensions are hyperbolic
HYPERBOLIC_RANGES = {
    "A": range(1, 8),
    "B": range(3, 9),
    "C": range(2, 5),
    "D": range(4, 9),
    "E": range(6, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}
# twisted ids whose untwisted partner is in the hyperbolic set (C2(2) is the rank-2 B chain)
TWISTED_RANGES = {
    "B": range(3, 5),
    "C": range(2, 9),
    "F": range(4, 5),
    "G": range(2, 3),
}

DIVERGENT_NOTE = "the volume integral diverges"

@dataclass
class AtlasRecord:
    algebra: AlgebraId
    S: tuple = ()
    verdict: str = ""
    cusps: tuple = ()
    vertices: list = field(default_factory=list)
    volumes: dict = field(default_factory=dict)
    closed_form: dict = None
    alias_of: str = None
    note: str = None
    error: str = None

    @property
    def name(self):
        return self.algebra.name

    @property
    def rank_overextended(self):
        return self.algebra.rank_overextended

    def best_volume(self):
        for method in (ADAPTIVE, SERIES, MONTECARLO):
            if method in self.volumes:
                return self.volumes[method]["value"]
        if self.closed_form is not None:
            return self.closed_form["value"]
        return None

    def to_json(self):
        return {
            "algebra": self.algebra.name,
            "family": self.algebra.family,
            "rank": self.algebra.rank,
            "twisted": self.algebra.twisted,
            "extended": self.algebra.extended,
            "rank_overextended": self.rank_overextended,
            "S": [format_matrix_row(row) for row in self.S],
            "verdict": self.verdict,
            # node labels 1..n
            "cusps": [i + 1 for i in self.cusps],
            "vertices": self.vertices,
            "volumes": self.volumes,
            "closed_form": self.closed_form,
            "alias_of": self.alias_of,
            "note": self.note,
            "error": self.error,
        }

    @classmethod
    def from_json(cls, d):
        algebra = AlgebraId(d["family"], d["rank"], d["twisted"], d.get("extended", True))
        return cls(
            algebra=algebra,
            S=parse_fraction_matrix(d["S"]),
            verdict=d["verdict"],
            cusps=tuple(i - 1 for i in d["cusps"]),
            vertices=d["vertices"],
            volumes=d["volumes"],
            closed_form=d["closed_form"],
            alias_of=d["alias_of"],
            note=d["note"],
            error=d["error"],
        )

def format_matrix_row(row):
    return [format_fraction(x) for x in row]

def _estimate_dict(est):
    return {"value": est.value, "error_bound": est.error_bound,
            "work": est.work, "converged": est.converged, "rigorous": est.rigorous}

def _alias_name(id):
    if not id.twisted:
        return None
    partner = id.alias_of()
    return partner.name if partner is not None else f"B{id.rank}"

def run_single(id, cfg=None, catalog=None):
    cfg = cfg or Config()
    if catalog is None and cfg.catalog:
        catalog = Catalog(cfg.catalog)
    datum = catalog_entry(id, catalog)
    cd = symmetrize_and_normalize(datum)
    s = shape_matrix(cd)
    report = classify_hyperbolicity(s)
    record = AtlasRecord(id, s.S, report.verdict, report.cusp_indices, alias_of=_alias_name(id))

    if not report.hyperbolic:
        record.note = DIVERGENT_NOTE
        return record

    geom = embed_domain(s, report)
    record.vertices = [{"v": x.v, "u": [float(c) for c in x.u]} for x in geom.vertices]

    for method in cfg.methods:
        if method == "adaptive":
            est = volume_adaptive(s, cfg.tol, cfg.cell_budget(s.n), cfg.rule_index(s.n),
                                  cfg.adaptive_rel_tol)
            record.volumes[ADAPTIVE] = _estimate_dict(est)
        elif method == "series":
            if s.n > cfg.series_cap:
                log.info(f"{id}: skipping series, n = {s.n} exceeds cap {cfg.series_cap}")
                continue
            try:
                est = volume_series(s, cfg.series_order, cfg.series_tol, cfg.series_cap)
            except BudgetExhausted as e:
                est = e.estimate
            record.volumes[SERIES] = _estimate_dict(est)
        elif method == "mc":
            est = volume_montecarlo(s, cfg.samples, cfg.seed, cfg.chunk)
            record.volumes[MONTECARLO] = _estimate_dict(est)

    cf = closed_form_volume(id)
    if cf is not None:
        record.closed_form = {"tag": cf.expression, "value": evaluate_closed_form(cf)}
    return record

def atlas_ids(cfg=None):
    cfg = cfg or Config()
    ids = []
    for family, ranks in HYPERBOLIC_RANGES.items():
        ids.extend(AlgebraId(family, r) for r in ranks)
    if cfg.include_twisted:
        for family, ranks in TWISTED_RANGES.items():
            ids.extend(AlgebraId(family, r, True) for r in ranks)
    ids = [i for i in ids if i.rank_overextended <= cfg.max_rank]
    return sorted(ids, key=lambda i: (i.family, i.rank, i.twisted))

def _run_guarded(args):
    id, cfg = args
    try:
        return run_single(id, cfg)
    except Exception as e:
        log.exception(f"{id}: atlas entry failed")
        return AtlasRecord(id, alias_of=_alias_name(id), error=f"{type(e).__name__}: {e}")

def run_atlas(cfg=None):
    cfg = cfg or Config()
    ids = atlas_ids(cfg)
    log.info(f"Atlas over {len(ids)} algebras, methods {cfg.methods}")
    jobs = [(i, cfg) for i in ids]
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            records = list(pool.map(_run_guarded, jobs))
    else:
        records = [_run_guarded(j) for j in jobs]
    return records

def dumps_json(records):
    return json.dumps([r.to_json() for r in records], indent=2, sort_keys=True) + "\n"

def loads_json(text):
    return [AtlasRecord.from_json(d) for d in json.loads(text)]

CSV_COLUMNS = ["name", "rank", "verdict", "volume_adaptive", "error_adaptive",
               "volume_mc", "sigma_mc", "closed_form"]

def dumps_csv(records):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in records:
        ad = r.volumes.get(ADAPTIVE, {})
        mc = r.volumes.get(MONTECARLO, {})
        cf = r.closed_form or {}
        w.writerow([r.name, r.rank_overextended, r.verdict or "error",
                    _cell(ad.get("value")), _cell(ad.get("error_bound")),
                    _cell(mc.get("value")), _cell(mc.get("error_bound")),
                    _cell(cf.get("value"))])
    return out.getvalue()

def _cell(x):
    return "" if x is None else repr(x)

@dataclass
class ReferenceRow:
    name: str
    algebra: AlgebraId
    volume: float
    source: str

@dataclass
class ReferenceTable:
    rows: list = field(default_factory=list)

def parse_reference(text, origin="<reference>"):
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None:
        return ReferenceTable()
    if [x.strip() for x in reader.fieldnames] != ["name", "volume", "source"]:
        raise ReferenceFormatError(f"{origin}: header must be name,volume,source")
    table = ReferenceTable()
    for lineno, row in enumerate(reader, 2):
        name = (row.get("name") or "").strip()
        try:
            algebra = parse_name(name)
            volume = float(row.get("volume"))
        except (HyperbolicWeylError, TypeError, ValueError) as e:
            raise ReferenceFormatError(f"{origin}:{lineno}: {e}")
        if not math.isfinite(volume) or volume <= 0:
            raise ReferenceFormatError(f"{origin}:{lineno}: volume must be positive")
        table.rows.append(ReferenceRow(name, algebra, volume, (row.get("source") or "").strip()))
    return table

def read_reference(path):
    with open(path, "r", newline="") as fd:
        return parse_reference(fd.read(), path)

@dataclass
class ComparisonRow:
    name: str
    reference: float
    computed: float
    deviation: float
    passed: bool

@dataclass
class ComparisonReport:
    rows: list = field(default_factory=list)
    unmatched: list = field(default_factory=list)

    @property
    def failures(self):
        return [r for r in self.rows if not r.passed]

    @property
    def exit_status(self):
        return 3 if self.failures else 0

def compare_reference(records, table, rel_tol=1e-4):
    index = {r.algebra: r for r in records}
    report = ComparisonReport()
    for ref in table.rows:
        rec = index.get(ref.algebra)
        computed = rec.best_volume() if rec is not None else None
        if computed is None:
            log.warning(f"no computed volume for reference row {ref.name}")
            report.unmatched.append(ref.name)
            continue
        dev = abs(computed - ref.volume) / ref.volume
        report.rows.append(ComparisonRow(ref.name, ref.volume, computed, dev, dev <= rel_tol))
    log.info(f"comparison: {len(report.rows)} rows, {len(report.failures)} failures, "
             f"{len(report.unmatched)} unmatched")
    return report
