# SPDX-License-Identifier: MIT
import logging, re

from .core import ParseError, UnknownAlias, HyperbolicWeylError
from .cartan import AlgebraId, FAMILIES

log = logging.getLogger("hyperbolic_weyl.names")

# E10 and the XE_n names of over-extended classical series
ALIAS_RE = re.compile(r"^([ABCD]?)E(\d+)$")

def _alias(text, upper):
    m = ALIAS_RE.match(upper)
    if not m:
        return None
    family, k = m.group(1), int(m.group(2))
    if not family and k in (6, 7, 8):
        # plain E6, E7, E8
        return None
    if not family:
        if k != 10:
            raise UnknownAlias(f"unknown alias {text!r}")
        return AlgebraId("E", 8)
    try:
        return AlgebraId(family, k - 2)
    except HyperbolicWeylError:
        raise UnknownAlias(f"alias {text!r} names no catalog algebra")

def parse_name(text):
    """
    Parse names like A2++, B4(2)++, C3, E10 or AE3 (case-insensitive).

    Grammar: FAMILY RANK [ "(" TWIST ")" ] [ "++" ]
    """
    raw = text
    upper = text.strip().upper()
    offset = len(text) - len(text.lstrip())
    if not upper:
        raise ParseError("empty algebra name", raw, 0)

    alias = _alias(raw, upper)
    if alias is not None:
        log.debug(f"alias {raw!r} -> {alias.name}")
        return alias

    pos = 0
    family = upper[pos]
    if family not in FAMILIES:
        raise ParseError(f"unknown family {family!r}", raw, offset + pos)
    pos += 1

    start = pos
    while pos < len(upper) and upper[pos].isdigit():
        pos += 1
    if pos == start:
        raise ParseError("expected a rank", raw, offset + pos)
    rank = int(upper[start:pos])

    twisted = False
    if pos < len(upper) and upper[pos] == "(":
        close = upper.find(")", pos)
        if close < 0:
            raise ParseError("unterminated twist marker", raw, offset + pos)
        twist = upper[pos + 1:close]
        if twist not in ("1", "2"):
            raise ParseError(f"unsupported twist {twist!r}", raw, offset + pos + 1)
        twisted = twist == "2"
        pos = close + 1

    extended = False
    if upper[pos:pos + 2] == "++":
        extended = True
        pos += 2
    if pos != len(upper):
        raise ParseError(f"unexpected {upper[pos:]!r}", raw, offset + pos)

    return AlgebraId(family, rank, twisted, extended)
