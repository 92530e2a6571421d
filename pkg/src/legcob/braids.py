"""Positive braid closures as fronts, with explicit filling traces.

The closure of a positive braid on s strands with letters i_1..i_k is
the front word

    L1 .. Ls  X_{s+i_1} .. X_{s+i_k}  Rs .. R1

(s nested eyes whose lower branches carry the braiding).  The filling
trace builds one closed one-letter block per letter, each from s-1
births plus a fish that creates the crossing, then merges consecutive
blocks with s merge pinches, so the surface has k(s-1) 0-handles and
s(k-1) 1-handles.
"""

from fractions import Fraction

from .errors import DomainError
from .front import FrontDiagram, parse_front
from .moves import CobordismTrace, apply_move, trace_summary

NOT_A_FILLING = "not a surface filling for this closure convention"
DISCONNECTED = "disconnected filling: genus per component not defined"


class BraidWord:
    """A positive braid word: strand count plus generator indices.

    >>> BraidWord(2, [1, 1, 1]).permutation_cycles()
    1
    >>> BraidWord(3, [2, 1]).permutation_cycles()
    1
    """

    def __init__(self, strands, letters):
        strands = int(strands)
        letters = [int(x) for x in letters]
        if strands < 2:
            raise DomainError(f"braid needs at least 2 strands, got {strands}")
        if not letters:
            raise DomainError("empty braid word")
        for x in letters:
            if not 1 <= x <= strands - 1:
                raise DomainError(
                    f"braid letter {x} out of range 1..{strands - 1}")
        self.strands = strands
        self.letters = letters

    def __repr__(self):
        return f"BraidWord({self.strands}, {self.letters})"

    def permutation_cycles(self):
        """Cycle count, fixed points included, of the strand permutation."""
        perm = list(range(self.strands))
        for x in self.letters:
            perm[x - 1], perm[x] = perm[x], perm[x - 1]
        seen = [False] * self.strands
        cycles = 0
        for a in range(self.strands):
            if seen[a]:
                continue
            cycles += 1
            while not seen[a]:
                seen[a] = True
                a = perm[a]
        return cycles


def _letter_block_moves(base, s, i):
    """Moves that append the closed one-letter block for generator i
    (word L1..Ls X_{s+i} Rs..R1) starting at word index base."""
    moves = []
    for k in range(1, s - i):
        moves.append(("B", base + k - 1, k))      # nested shells
    moves.append(("B", base + s - i - 1, s - i))  # host eye
    moves.append(("R1b", base + s - i, s - i + 1))  # fish: the crossing
    m = s - i + 1
    while m < s:
        # nest one more eye inside and commute its right cusp past the
        # crossing, pushing the crossing one level deeper
        moves.append(("B", base + m, m + 1))
        moves.append(("C", base + m + 1))
        m += 1
    return moves


def positive_braid_closure(b):
    """Front closure of a positive braid plus the filling trace.

    OUTPUT: (diagram, trace, genus) where genus = (2 - c + k - s)/2 is
    the surface formula value with c the permutation cycle count; for a
    connected closure this equals the trace bookkeeping genus exactly.
    A genus below zero means the trace is not a filling of a connected
    closure by a surface (see closure_report for the flag).
    """
    s, letters = b.strands, b.letters
    k = len(letters)
    d = FrontDiagram([])
    moves = []
    for j, i in enumerate(letters):
        base = len(d.events)
        block = _letter_block_moves(base, s, i)
        for mv in block:
            d = apply_move(d, mv, gf_mode=True)
        moves.extend(block)
        if j > 0:
            for t in range(s):
                mv = ("PM", base - 1 - t)
                d = apply_move(d, mv, gf_mode=True)
                moves.append(mv)
    expected = ([("L", t) for t in range(1, s + 1)]
                + [("X", s + i) for i in letters]
                + [("R", t) for t in range(s, 0, -1)])
    assert d.events == expected, "closure construction went off pattern"
    births = sum(1 for m in moves if m[0] == "B")
    pinches = sum(1 for m in moves if m[0] == "PM")
    assert births == k * (s - 1) and pinches == s * (k - 1)
    cycles = b.permutation_cycles()
    assert d.n_components == cycles, \
        "closure components disagree with permutation cycles"
    genus = Fraction(2 - cycles + k - s, 2)
    trace = CobordismTrace(parse_front(""), moves, gf_mode=True)
    try:
        summary = trace_summary(trace)
    except DomainError:
        summary = None  # disconnected: formula value is still reported
    if summary is not None:
        assert summary["genus"] == genus
        assert summary["end"].word == d.word
    return d, trace, genus


def closure_report(b):
    """positive_braid_closure plus connectivity and boundary-case flags."""
    diagram, trace, genus = positive_braid_closure(b)
    flags = []
    try:
        summary = trace_summary(trace)
        connected = True
    except DomainError:
        summary = None
        connected = False
        flags.append(DISCONNECTED)
    if genus < 0:
        flags.append(NOT_A_FILLING)
    return {
        "diagram": diagram,
        "trace": trace,
        "genus": genus,
        "cycles": b.permutation_cycles(),
        "connected": connected,
        "chi": b.strands - len(b.letters),
        "flags": flags,
    }
