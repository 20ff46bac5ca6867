# SPDX-License-Identifier: MIT
import logging, sys

log = logging.getLogger("hyperbolic_weyl.util")

RED       = 31
GREEN     = 32
YELLOW    = 33
BLUE      = 34
MAGENTA   = 35

BRIGHT    = 1

# Styling is dropped when stdout is not a terminal (pipes, --out redirects)
USE_COLOR = sys.stdout.isatty()

def col(*color):
    if not USE_COLOR:
        return ""
    color = ";".join(map(str, color))
    return f"\033[{color}m"

def p_style(*args, color=[], **kwargs):
    if isinstance(color, int):
        color = [color]
    text = " ".join(map(str, args))
    print(col(*color) + text + col(), **kwargs)
    log.info(f"MSG: {text}")

def p_plain(*args):
    p_style(*args)

def p_info(*args):
    p_style(*args, color=(BRIGHT, BLUE))

def p_progress(*args):
    p_style(*args, color=(BRIGHT, MAGENTA))

def p_message(*args):
    p_style(*args, color=BRIGHT)

def p_error(*args):
    p_style(*args, color=(BRIGHT, RED), file=sys.stderr)

def p_warning(*args):
    p_style(*args, color=(BRIGHT, YELLOW))

def p_success(*args):
    p_style(*args, color=(BRIGHT, GREEN))

def p_table(rows, indent="  "):
    "Print a list of string rows with right-aligned columns."
    if not rows:
        return
    widths = [max(len(r[j]) for r in rows) for j in range(len(rows[0]))]
    for r in rows:
        p_plain(indent + "  ".join(x.rjust(w) for x, w in zip(r, widths)))
