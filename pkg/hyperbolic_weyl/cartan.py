# SPDX-License-Identifier: MIT
import logging, os.path
from dataclasses import dataclass
from fractions import Fraction

from .core import *

log = logging.getLogger("hyperbolic_weyl.cartan")

FAMILIES = "ABCDEFG"
TWISTABLE = set("BCFG")
MAX_RANK = 24

# Affine extensions with coinciding Weyl groups. The twisted id in the last
# column shares its shape matrix with the untwisted family of the first.
WEYL_ISOMORPHISMS = [
    ("G2(1)+", "D4(3)+", "G2(2)"),
    ("B_n(1)+", "A_2n-1(2)+", "C_n(2)"),
    ("C_n(1)+", "D_n+1(2)+", "B_n(2)"),
    ("F4(1)+", "E6(2)+", "F4(2)"),
]
TWIST_PARTNER = {twisted[0]: untwisted[0] for untwisted, _, twisted in WEYL_ISOMORPHISMS}

@dataclass(frozen=True, order=True)
class AlgebraId:
    family: str
    rank: int
    twisted: bool = False
    extended: bool = True

    def __post_init__(self):
        if self.family not in FAMILIES or len(self.family) != 1:
            raise UnknownAlgebra(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or self.rank < 1:
            raise UnknownAlgebra(f"invalid rank {self.rank!r} for family {self.family}")
        lo, hi = {
            "A": (1, MAX_RANK),
            "B": (3, MAX_RANK),
            "C": (2, MAX_RANK),
            "D": (4, MAX_RANK),
            "E": (6, 8),
            "F": (4, 4),
            "G": (2, 2),
        }[self.family]
        if not lo <= self.rank <= hi:
            raise UnknownAlgebra(f"{self.family}{self.rank} is out of range")
        if self.twisted and self.family not in TWISTABLE:
            raise TwistUnavailable(f"{self.family}{self.rank} is simply laced and has no twisted form")

    @property
    def name(self):
        s = f"{self.family}{self.rank}"
        if self.twisted:
            s += "(2)"
        if self.extended:
            s += "++"
        return s

    @property
    def rank_overextended(self):
        return self.rank + 2

    def alias_of(self):
        "Untwisted algebra whose Weyl group (and shape matrix) a twisted id shares."
        if not self.twisted:
            return None
        family = TWIST_PARTNER[self.family]
        if family == "B" and self.rank == 2:
            # B2 is not a catalog id; C2(2) resolves to the rank-2 B chain
            return None
        return AlgebraId(family, self.rank, False, self.extended)

    def __str__(self):
        return self.name

@dataclass(frozen=True)
class AlgebraDatum:
    id: AlgebraId
    cartan: tuple
    labels: tuple
    node_order_note: str = ""
    printed_labels: tuple = None

    @property
    def n(self):
        return len(self.labels)

    def validate(self):
        a, n = self.cartan, len(self.cartan)
        if any(len(row) != n for row in a):
            raise CatalogFormatError(f"{self.id}: Cartan matrix is not square")
        if len(self.labels) != n:
            raise CatalogFormatError(f"{self.id}: expected {n} labels, got {len(self.labels)}")
        if any(m <= 0 for m in self.labels):
            raise CatalogFormatError(f"{self.id}: labels must be positive")
        for i in range(n):
            if a[i][i] != 2:
                raise CatalogFormatError(f"{self.id}: diagonal entry {i} is {a[i][i]}, not 2")
            for j in range(n):
                if i != j and a[i][j] > 0:
                    raise CatalogFormatError(f"{self.id}: positive off-diagonal entry ({i},{j})")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise NotSymmetrizable(f"{self.id}: A[{i}][{j}] and A[{j}][{i}] disagree on zero")

@dataclass(frozen=True)
class CartanData:
    datum: AlgebraDatum
    norms: tuple
    B: tuple
    Binv: tuple
    nvec: tuple

    @property
    def n(self):
        return self.datum.n

    @property
    def labels(self):
        return self.datum.labels

def _chain(n):
    a = [[0] * n for i in range(n)]
    for i in range(n):
        a[i][i] = 2
        if i + 1 < n:
            a[i][i + 1] = a[i + 1][i] = -1
    return a

def _graph(n, edges):
    a = [[0] * n for i in range(n)]
    for i in range(n):
        a[i][i] = 2
    for i, j in edges:
        a[i][j] = a[j][i] = -1
    return a

def _frozen(a):
    return tuple(tuple(row) for row in a)

def _series_a(n):
    return _chain(n), (1,) * n, "Bourbaki order: chain 1-2-...-n."

def _series_b(n):
    a = _chain(n)
    a[n - 2][n - 1] = -2
    labels = (1,) + (2,) * (n - 1)
    return a, labels, ("Bourbaki order: chain 1-...-n, node n short "
                       "(A[n-1][n] = -2 in the convention A_ij = 2 a_i.a_j / a_j^2); "
                       "labels are the highest root coefficients.")

def _series_c(n):
    a = _chain(n)
    a[n - 2][n - 1] = -2
    labels = (1,) * n
    return a, labels, ("Chain 1-...-n with node n the short one in the column convention "
                       "A_ij = 2 a_i.a_j / a_j^2 (Bourbaki C_n with node n long when read "
                       "in the transposed row convention). Labels (1,...,1) are the "
                       "coefficients of the highest short root; this is the only labelling "
                       "that reproduces the printed C_n shape table, whose 1/4 diagonal "
                       "entry comes first.")

def _series_d(n):
    edges = [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    labels = (1,) + (2,) * (n - 3) + (1, 1)
    return _graph(n, edges), labels, "Bourbaki order: chain 1-...-(n-1), node n attached to n-2."

def _e6():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)]
    return _graph(6, edges), (1, 2, 3, 2, 1, 2), \
        "Chain 1-2-3-4-5, node 6 attached to node 3 (Bourbaki 1,3,4,5,6,2)."

def _e7():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)]
    return _graph(7, edges), (2, 3, 4, 3, 2, 1, 2), \
        ("Chain 1-...-6, node 7 attached to node 3 (Bourbaki 1,3,4,5,6,7,2). "
         "The seventh label completes the six printed ones.")

def _e8():
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (4, 7)]
    return _graph(8, edges), (2, 3, 4, 5, 6, 4, 2, 3), \
        "Chain 1-...-7, node 8 attached to node 5 (Bourbaki 8,7,6,5,4,3,1,2)."

def _f4():
    a = _chain(4)
    a[1][2] = -2
    return a, (2, 3, 4, 2), \
        ("Bourbaki order: nodes 1,2 long, 3,4 short. Labels are the highest root "
         "coefficients; the printed (2,3,2,1) is the n-vector m_j a_j^2.")

def _g2():
    a = [[2, -3], [-1, 2]]
    return a, (2, 3), "Node 1 long, node 2 short; highest root 2a1 + 3a2."

BUILDERS = {
    "A": _series_a,
    "B": _series_b,
    "C": _series_c,
    "D": _series_d,
    "E": lambda n: {6: _e6, 7: _e7, 8: _e8}[n](),
    "F": lambda n: _f4(),
    "G": lambda n: _g2(),
}

PRINTED_LABELS = {
    ("F", 4): (2, 3, 2, 1),
    ("E", 7): (2, 3, 4, 3, 2, 1),
}

class Catalog(object):
    """
    Cartan matrices and labels keyed by AlgebraId.

    The built-in table is generated by the family builders; a plain-text
    override file may add or replace records.
    """
    def __init__(self, path=None):
        self.overrides = {}
        if path is not None:
            self.load(path)

    def load(self, path):
        log.info(f"Loading catalog overrides from {path}")
        if not os.path.exists(path):
            raise CatalogFormatError(f"catalog file {path} does not exist")
        with open(path, "r") as fd:
            for lineno, line in enumerate(fd, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                datum = parse_catalog_record(line, lineno)
                key = (datum.id.family, datum.id.rank, datum.id.twisted)
                log.info(f"  override {datum.id}")
                self.overrides[key] = datum

    def entry(self, id):
        key = (id.family, id.rank, id.twisted)
        if key in self.overrides:
            return self.overrides[key]

        if id.twisted:
            partner = id.alias_of()
            if partner is not None:
                base = self.entry(partner)
            else:
                a, labels, note = _series_b(id.rank)
                base = AlgebraDatum(id, _frozen(a), labels, note)
            log.debug(f"{id.name} resolves to {base.id.name}")
            return AlgebraDatum(id, base.cartan, base.labels,
                                f"Alias of {base.id.name}. {base.node_order_note}",
                                base.printed_labels)

        a, labels, note = BUILDERS[id.family](id.rank)
        datum = AlgebraDatum(id, _frozen(a), tuple(labels), note,
                             PRINTED_LABELS.get((id.family, id.rank)))
        datum.validate()
        return datum

DEFAULT_CATALOG = Catalog()

def catalog_entry(id, catalog=None):
    return (catalog or DEFAULT_CATALOG).entry(id)

def parse_catalog_record(line, lineno=0):
    "family rank twist <n*n Cartan entries, row-major> <n labels>"
    fields = line.split()
    if len(fields) < 3:
        raise CatalogFormatError(f"line {lineno}: expected family, rank, twist")
    family, rank, twist = fields[0].upper(), fields[1], fields[2].lower()
    try:
        rank = int(rank)
    except ValueError:
        raise CatalogFormatError(f"line {lineno}: bad rank {rank!r}")
    if twist not in ("untwisted", "twisted"):
        raise CatalogFormatError(f"line {lineno}: twist must be 'untwisted' or 'twisted'")
    if len(fields) != 3 + rank * rank + rank:
        raise CatalogFormatError(f"line {lineno}: expected {rank * rank + rank} numbers "
                                 f"after the header, got {len(fields) - 3}")
    try:
        nums = [int(x) for x in fields[3:]]
    except ValueError:
        raise CatalogFormatError(f"line {lineno}: non-integer entry")
    cartan = tuple(tuple(nums[i * rank:(i + 1) * rank]) for i in range(rank))
    labels = tuple(nums[rank * rank:])
    id = AlgebraId(family, rank, twist == "twisted")
    datum = AlgebraDatum(id, cartan, labels, f"User-supplied record (line {lineno}).")
    datum.validate()
    return datum

def symmetrizer(cartan):
    """
    Positive rationals d with A_ij d_j = A_ji d_i, d = 1 on the first node of
    every connected component.
    """
    n = len(cartan)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if j == i or cartan[i][j] == 0:
                    continue
                if cartan[j][i] == 0:
                    raise NotSymmetrizable(f"A[{i}][{j}] != 0 but A[{j}][{i}] == 0")
                dj = Fraction(cartan[j][i]) * d[i] / cartan[i][j]
                if d[j] is None:
                    d[j] = dj
                    stack.append(j)
                elif d[j] != dj:
                    raise NotSymmetrizable(f"inconsistent symmetrizer around node {j}")
    if any(x <= 0 for x in d):
        raise NotSymmetrizable("symmetrizer is not positive")
    return tuple(d)

def symmetrize_and_normalize(datum):
    """
    B = A diag(d) with d scaled so that (1/2) m^T B m = 1, i.e. the highest
    root (or whichever combination the labels name) has unit length.
    """
    a, m = datum.cartan, datum.labels
    n = len(m)
    d0 = symmetrizer(a)
    b0 = tuple(tuple(Fraction(a[i][j]) * d0[j] for j in range(n)) for i in range(n))
    if not is_symmetric(b0):
        raise NotSymmetrizable(f"{datum.id}: A diag(d) is not symmetric")
    theta2 = quad_form(b0, m)
    if theta2 <= 0:
        raise SingularB(f"{datum.id}: m^T B m = {theta2} is not positive")
    scale = 2 / theta2
    log.debug(f"{datum.id}: symmetrizer {d0}, scale {scale}")

    norms = tuple(x * scale for x in d0)
    B = tuple(tuple(x * scale for x in row) for row in b0)
    Binv = invert_exact(B, error=SingularB)
    nvec = tuple(Fraction(m[j]) * norms[j] for j in range(n))

    assert quad_form(B, m) / 2 == 1
    return CartanData(datum, norms, B, Binv, nvec)
