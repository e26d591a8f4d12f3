"""Parsing and formatting of weight expressions such as ``1^2,1/2^4``.

Grammar::

    expr := term ("," term)*
    term := frac ("^" count)?
    frac := int | int "/" int
"""
from __future__ import annotations

import re
from fractions import Fraction

from .weights import WeightVector, as_weights


class WeightParseError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.position = position
        self.text = text


_TOKEN = re.compile(r"\s*(?:(\d+)|(/)|(\^)|(,))")


def _tokens(text: str):
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise WeightParseError(f"unexpected character {text[start]!r}", start, text)
        start = m.start(m.lastindex)
        yield m.lastindex, m.group(m.lastindex), start
        pos = m.end()
    yield 0, "", len(text)


def parse_weight_expr(text: str) -> WeightVector:
    toks = list(_tokens(text))
    i = 0

    def expect_int(what):
        nonlocal i
        kind, val, pos = toks[i]
        if kind != 1:
            raise WeightParseError(f"expected {what}", pos, text)
        i += 1
        return int(val), pos

    entries = []
    while True:
        num, pos = expect_int("an integer")
        den = 1
        if toks[i][0] == 2:
            i += 1
            den, dpos = expect_int("a denominator")
            if den == 0:
                raise WeightParseError("zero denominator", dpos, text)
        value = Fraction(num, den)
        if not 0 < value <= 1:
            raise WeightParseError(f"weight {value} not in (0, 1]", pos, text)
        count = 1
        if toks[i][0] == 3:
            i += 1
            count, cpos = expect_int("a repeat count")
            if count <= 0:
                raise WeightParseError("repeat count must be positive", cpos, text)
        entries += [value] * count
        kind, _, pos = toks[i]
        if kind == 0:
            break
        if kind != 4:
            raise WeightParseError("expected ',' or end of input", pos, text)
        i += 1
    return WeightVector(entries)


def format_weights(w) -> str:
    """Run-length form, e.g. ``1^2,1/2^4``; inverse of ``parse_weight_expr``."""
    w = as_weights(w)
    out = []
    run = None
    count = 0
    for x in list(w.entries) + [None]:
        if x == run and x is not None:
            count += 1
            continue
        if run is not None:
            out.append(str(run) + (f"^{count}" if count > 1 else ""))
        run, count = x, 1
    return ",".join(out)
