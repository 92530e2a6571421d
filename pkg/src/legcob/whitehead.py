"""Whitehead doubles of knot fronts and their genus-one filling traces.

The double replaces every strand by two antiparallel copies: each base
event becomes a short group of events on the copies, and a clasp
inserted after the first cusp group makes it the tb-twisted double.
Replacing the clasp by a plain cut (close and reopen the two lowest
strands) gives an unknotted loop with tb -1, which a single birth plus
isotopy moves can reach; two merge pinches then trade the cut for the
clasp, so the whole trace is a genus-one filling.

The isotopy from the standard eye to the cut loop is built
constructively: the eye is a thin rectangle around the cut point, and
its free end (the tongue tip) walks once around the base knot.  Every
base feature the tip passes materializes as its doubled event group,
and consecutive stages differ by a handful of moves in a small window,
which a bidirectional search fills in.
"""

from collections import defaultdict

from .errors import DomainError
from .front import FrontDiagram, classical_invariants, parse_front
from .moves import CobordismTrace, trace_summary
from .search import connect_fronts

_CLASP = [("L", 2), ("X", 1), ("X", 3), ("R", 2)]
_CUT = [("R", 1), ("L", 1)]
# fish in the cut region, fish two strands below, then merge both fish
# cusps with their neighbors: the four clasp events replace the cut
_CLASP_ENDING = [("R1a", 5, 1), ("R1b", 8, 2), ("PM", 7), ("PM", 3)]
_CUT_SLICE = 1


def _double_groups(base):
    out = []
    for kind, h in base.events:
        if kind == "L":
            out.append([("L", 2 * h - 1), ("L", 2 * h - 1), ("X", 2 * h)])
        elif kind == "X":
            out.append([("X", 2 * h), ("X", 2 * h - 1),
                        ("X", 2 * h + 1), ("X", 2 * h)])
        else:
            out.append([("X", 2 * h), ("R", 2 * h - 1), ("R", 2 * h - 1)])
    return out


def _assemble(base, middle):
    groups = _double_groups(base)
    events = list(groups[0]) + middle
    for g in groups[1:]:
        events.extend(g)
    return FrontDiagram(events)


def whitehead_diagram(base):
    """The clasped double of a knot front (tb 1, rotation 0)."""
    if base.n_components != 1:
        raise DomainError(
            f"whitehead double needs a knot front, got "
            f"{base.n_components} components")
    return _assemble(base, list(_CLASP))


def _cut_loop(base):
    return _assemble(base, list(_CUT))


def _diff_window(ev_a, ev_b, margin):
    lo = 0
    while lo < len(ev_a) and lo < len(ev_b) and ev_a[lo] == ev_b[lo]:
        lo += 1
    hi_a, hi_b = len(ev_a), len(ev_b)
    while hi_a > lo and hi_b > lo and ev_a[hi_a - 1] == ev_b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    return max(0, lo - margin), max(hi_a, hi_b) + margin


def _loop_visits(base):
    """Walk the knot once around, starting just right of the cut.

    Yields (strand_id, direction, features): direction +1 walks right
    toward the strand's death cusp, -1 walks left toward its birth, and
    features lists ('X', event, other_id) crossings in walking order
    followed by ('end', event, partner_id) for the turn cusp.  The cut
    strand opens the walk (right half) and a featureless visit to its
    left half closes it.
    """
    born, dies = {}, {}
    for i, kind, pos, u, l in base.cusps:
        if kind == "L":
            born[u] = (i, l)
            born[l] = (i, u)
        else:
            dies[u] = (i, l)
            dies[l] = (i, u)
    xs = defaultdict(list)
    for i, pos, u, l in base.crossings:
        xs[u].append((i, l))
        xs[l].append((i, u))
    cut_id = base.stacks[_CUT_SLICE][0]
    visits = []
    cur, direction = cut_id, 1
    while True:
        if cur == cut_id and visits:
            visits.append((cur, 1, []))
            return visits
        if direction > 0:
            e, partner = dies[cur]
            feats = [("X", i, o) for i, o in sorted(xs[cur])]
        else:
            e, partner = born[cur]
            feats = [("X", i, o) for i, o in sorted(xs[cur], reverse=True)]
        visits.append((cur, direction, feats + [("end", e, partner)]))
        cur, direction = partner, -direction


class _TongueState:
    """Coverage bookkeeping for the tongue walk, renderable to a front.

    spans[w] is the slice range where strand w already carries its two
    companion copies; mat holds base event indices whose doubled group
    has materialized; tip is [strand, direction, gap, side] with side
    ordering the tip against the start edge when both share gap 1.
    """

    def __init__(self, base):
        self.base = base
        self.mat = set()
        self.cut_id = base.stacks[_CUT_SLICE][0]
        self.spans = {self.cut_id: [_CUT_SLICE, _CUT_SLICE]}
        self.tip = [self.cut_id, 1, _CUT_SLICE, 1]

    def covered_at(self, w, t, before_start, at_event=False):
        if w not in self.spans:
            return False
        lo, hi = self.spans[w]
        if not lo <= t <= hi:
            return False
        if w == self.cut_id and t == _CUT_SLICE and before_start:
            return False
        if at_event and w == self.tip[0] and self.tip[1] > 0 \
                and t == self.tip[2] \
                and not (w == self.cut_id and t >= _CUT_SLICE):
            # the event at index t sits just right of a right-moving
            # tip, so the tip strand's copies have not reached it yet;
            # the cut strand keeps its original copies right of the cut
            return False
        return True

    def _c_below(self, t, pos, before_start=False, at_event=False):
        return sum(1 for w in self.base.stacks[t][:pos]
                   if self.covered_at(w, t, before_start, at_event))

    def _group(self, e):
        kind, h = self.base.events[e]
        c = self._c_below(e, h - 1, at_event=True)
        a = 2 * c + 1
        if kind == "L":
            return [("L", a), ("L", a), ("X", a + 1)]
        if kind == "R":
            return [("X", a + 1), ("R", a), ("R", a)]
        return [("X", a + 1), ("X", a), ("X", a + 2), ("X", a + 1)]

    def _tip_event(self):
        wid, direction, gap, side = self.tip
        pos = self.base.stacks[gap].index(wid)
        c = self._c_below(gap, pos,
                          before_start=(gap == _CUT_SLICE and side < 0))
        a = 2 * c + 1
        return ("R", a) if direction > 0 else ("L", a)

    def render(self):
        ev = []
        gap = self.tip[2]
        for g in range(len(self.base.events) + 1):
            if g == _CUT_SLICE:
                if gap == g and self.tip[3] < 0:
                    ev.append(self._tip_event())
                ev.append(("L", 1))
                if gap == g and self.tip[3] > 0:
                    ev.append(self._tip_event())
            elif gap == g:
                ev.append(self._tip_event())
            if g < len(self.base.events) and g in self.mat:
                ev.extend(self._group(g))
        return FrontDiagram(ev)


def _extend_span(state, g):
    lo, hi = state.spans[state.tip[0]]
    state.spans[state.tip[0]] = [min(lo, g), max(hi, g)]


def _diff_band(ev_a, ev_b, pad):
    """Heights touched by the differing events of the two words, padded."""
    lo = 0
    while lo < len(ev_a) and lo < len(ev_b) and ev_a[lo] == ev_b[lo]:
        lo += 1
    hi_a, hi_b = len(ev_a), len(ev_b)
    while hi_a > lo and hi_b > lo and ev_a[hi_a - 1] == ev_b[hi_b - 1]:
        hi_a -= 1
        hi_b -= 1
    band = set()
    for kind, pos in list(ev_a[lo:hi_a]) + list(ev_b[lo:hi_b]):
        band.update(range(pos - pad, pos + pad + 2))
    return band


def _advance(state, cur, moves):
    target = state.render()
    if target.word == cur.word:
        return cur
    # Most stage gaps are pure commutes (the tip sliding past a group),
    # so try those alone before admitting fish growth, which multiplies
    # the branching by the stack height.
    attempts = (
        (("C", "Ch"), frozenset(), 2, 6, 20000),
        (None, _diff_band(cur.events, target.events, 2), 2, 5, 120000),
        (None, _diff_band(cur.events, target.events, 4), 4, 6, 300000),
    )
    for kinds, fish, margin, depth, budget in attempts:
        window = _diff_window(cur.events, target.events, margin)
        seq = connect_fronts(cur, target, depth=depth, budget=budget,
                             window=window, kinds=kinds, fish_heights=fish)
        if seq is not None:
            moves.extend(seq)
            return target
    raise DomainError(
        f"could not connect tongue stages {cur.word!r} -> {target.word!r}")


def _slide_to(state, cur, moves, fe, vdir):
    """Walk the tip up to the slot of base event fe, one hop at a time."""
    if vdir > 0:
        while state.tip[2] < fe:
            if state.tip[2] == _CUT_SLICE and state.tip[3] < 0:
                state.tip[3] = 1
            else:
                state.tip[2] += 1
                if state.tip[2] == _CUT_SLICE:
                    state.tip[3] = -1
                _extend_span(state, state.tip[2])
            cur = _advance(state, cur, moves)
    else:
        while state.tip[2] > fe + 1:
            if state.tip[2] == _CUT_SLICE and state.tip[3] > 0:
                state.tip[3] = -1
            else:
                state.tip[2] -= 1
                if state.tip[2] == _CUT_SLICE:
                    state.tip[3] = 1
                _extend_span(state, state.tip[2])
            cur = _advance(state, cur, moves)
    return cur


def _cover(state, cur, moves, feat, vdir):
    if feat[0] == "X":
        _, fe, other = feat
        if state.covered_at(other, fe, False):
            state.mat.add(fe)
        state.tip[2] = fe + 1 if vdir > 0 else fe
        if state.tip[2] == _CUT_SLICE:
            state.tip[3] = 1 if vdir < 0 else -1
        _extend_span(state, state.tip[2])
        return _advance(state, cur, moves)
    _, fe, partner = feat
    state.mat.add(fe)
    if vdir > 0:
        gap, side = fe, (1 if fe == _CUT_SLICE else 0)
    else:
        gap, side = fe + 1, (-1 if fe + 1 == _CUT_SLICE else 0)
    state.tip = [partner, -vdir, gap, side]
    span = [gap, gap]
    if partner in state.spans:
        old = state.spans[partner]
        span = [min(span[0], old[0]), max(span[1], old[1])]
    state.spans[partner] = span
    return _advance(state, cur, moves)


def _drag_moves(base):
    """Isotopy moves from the standard eye L1 R1 to the cut loop."""
    state = _TongueState(base)
    cur = state.render()
    moves = []
    for wid, vdir, feats in _loop_visits(base):
        for feat in feats:
            cur = _slide_to(state, cur, moves, feat[1], vdir)
            cur = _cover(state, cur, moves, feat, vdir)
    loop = _cut_loop(base)
    if cur.word != loop.word:
        raise DomainError(
            f"tongue walk ended at {cur.word!r}, not the cut loop")
    return moves


def whitehead_double(base, gf_mode=True):
    """Clasped double plus its one-birth, two-pinch filling trace.

    INPUT: a knot front.  In gf mode the base must have rotation number
    zero and every pinch of the trace passes the grading check.
    OUTPUT: (diagram, trace); trace starts from the empty front and
    replays to the diagram with genus 1.
    """
    diagram = whitehead_diagram(base)
    if gf_mode:
        rot = classical_invariants(base)["rotation"][0]
        if rot != 0:
            raise DomainError(
                f"gf mode requires rotation number 0, base has {rot}")
    moves = [("B", 0, 1)] + _drag_moves(base) + list(_CLASP_ENDING)
    trace = CobordismTrace(parse_front(""), moves, gf_mode=gf_mode)
    summary = trace_summary(trace)
    assert summary["end"].word == diagram.word, "trace missed the double"
    assert summary["genus"] == 1
    return diagram, trace
