"""Moves on front words and replayable cobordism traces.

A move rewrites a small window of the event word and the result is
revalidated by rebuilding the FrontDiagram, so an illegal rewrite
surfaces as "move not applicable" instead of a corrupt diagram.

Move syntax, one per trace line (s = slice index, h = height, e = event
index, all 0-based except heights which are 1-based like event words):

    B s h     birth: insert L_h R_h at slice s (new unknot eye)
    P s h     pinch the strands at heights h, h+1: insert R_h L_h
    PM e      merge pinch: delete the adjacent pair R_h L_h at e, e+1
    R1a s h   grow a fish below the strand at height h in slice s
    R1b s h   grow a fish above the strand at height h in slice s
    R1a- e    remove the fish whose three events start at e
    R1b- e    remove the fish whose three events start at e
    R2u e     slide the cusp at event e up past the strand above it
    R2d e     slide the cusp at event e down past the strand below it
    R2u- e    undo an R2u (matches the three-event pattern at e)
    R2d- e    undo an R2d
    R3 e      triangle move on the three crossings at e, e+1, e+2
    C e       commute the independent events at e and e+1
    Ch e      commute, but when a moved left cusp may land on either
              side of a dying pair, place it above instead of below

B, P and PM change the surface topology; the rest are isotopies of the
front and leave tb, rotation numbers, component count and the graded
ruling count unchanged.
"""

from collections import defaultdict
from fractions import Fraction

from .errors import DomainError
from .front import FrontDiagram, maslov_potential, parse_front

_MOVE_ARITY = {
    "B": 2, "P": 2, "R1a": 2, "R1b": 2,
    "PM": 1, "R1a-": 1, "R1b-": 1,
    "R2u": 1, "R2d": 1, "R2u-": 1, "R2d-": 1,
    "R3": 1, "C": 1, "Ch": 1,
}


def parse_move(text):
    """Parse one move line like 'B 0 1' or 'PM 3' into a tuple."""
    tok = text.split()
    if not tok or tok[0] not in _MOVE_ARITY:
        raise DomainError(f"bad move line {text!r}")
    kind = tok[0]
    if len(tok) != 1 + _MOVE_ARITY[kind]:
        raise DomainError(
            f"bad move line {text!r}: {kind} takes {_MOVE_ARITY[kind]} "
            f"argument(s)")
    args = []
    for t in tok[1:]:
        if not t.lstrip("-").isdigit() or int(t) < 0:
            raise DomainError(f"bad move line {text!r}: arguments are >= 0")
        args.append(int(t))
    return (kind, *args)


def format_move(move):
    return " ".join(str(x) for x in move)


def _fail(move, reason):
    raise DomainError(f"move not applicable ({format_move(move)}): {reason}")


def _rebuild(events, move):
    try:
        return FrontDiagram(events)
    except DomainError as err:
        _fail(move, f"rewritten word is invalid: {err}")


def _cusp_at(diagram, e):
    for i, kind, pos, u, l in diagram.cusps:
        if i == e:
            return kind, pos, u, l
    raise AssertionError(f"no cusp record at event {e}")


def _check_pinch_grading(diagram, a, b):
    """a above b: a pinch is graded when both strands carry the same
    cusp level, i.e. mu(a) = mu(b) + 1 so the new right cusp is
    consistent with the existing potential."""
    if diagram.comp_of[a] != diagram.comp_of[b]:
        return  # potentials on distinct components can be shifted freely
    mp = maslov_potential(diagram)
    m = mp.mods[diagram.comp_of[a]]
    diff = mp.values[a] - mp.values[b] - 1
    if (diff % m if m else diff) != 0:
        raise DomainError(
            f"grading mismatch at pinch: potentials {mp.values[a]}, "
            f"{mp.values[b]} (mod {m})")


def _check_merge_grading(diagram, e):
    _, _, a, b = _cusp_at(diagram, e)        # dying pair at the R
    _, _, u, v = _cusp_at(diagram, e + 1)    # born pair at the L
    if diagram.comp_of[a] != diagram.comp_of[u]:
        return
    mp = maslov_potential(diagram)
    m = mp.mods[diagram.comp_of[a]]
    diff = mp.values[a] - mp.values[u]
    if (diff % m if m else diff) != 0:
        raise DomainError(
            f"grading mismatch at pinch: cusp levels {mp.values[a]}, "
            f"{mp.values[u]} (mod {m})")


def _participants(event, before, after):
    kind, pos = event
    if kind == "L":
        return after[pos - 1], after[pos]
    return before[pos - 1], before[pos]


def _reposition(event, ids, stack, s2_pos, high=False):
    """Recompute an event against a new stack so that the final strand
    order s2_pos is reproduced.  Returns (new_event, stack_after).

    When the stack holds strands that die before the final slice, a
    left cusp can sit on either side of the dying run; high=False puts
    it below, high=True above.
    """
    kind, _ = event
    u, l = ids
    if kind == "L":
        target = s2_pos[u]
        goal = sum(1 for w in stack if w in s2_pos and s2_pos[w] < target)
        q = seen = 0
        while q < len(stack) and seen < goal:
            if stack[q] in s2_pos:
                seen += 1
            q += 1
        if high:
            while q < len(stack) and stack[q] not in s2_pos:
                q += 1
        return ("L", q + 1), stack[:q] + [u, l] + stack[q:]
    if u not in stack:
        raise DomainError("commuted strand is missing")
    i = stack.index(u)
    if i + 1 >= len(stack) or stack[i + 1] != l:
        raise DomainError("strands are not adjacent")
    if kind == "X":
        out = list(stack)
        out[i], out[i + 1] = l, u
        return ("X", i + 1), out
    return ("R", i + 1), stack[:i] + stack[i + 2:]


def apply_move(diagram, move, gf_mode=False):
    """Apply one move to a FrontDiagram, returning the new diagram."""
    new, _, _, _ = _apply(diagram, move, gf_mode)
    return new


def _apply(diagram, move, gf_mode=False):
    """Internal applier.  Returns (new_diagram, w0, w1_old, w1_new): the
    rewritten event window [w0, w1_old) was replaced by [w0, w1_new)."""
    kind = move[0]
    if kind not in _MOVE_ARITY or len(move) != 1 + _MOVE_ARITY[kind]:
        raise DomainError(f"bad move {move!r}")
    ev = list(diagram.events)

    if kind in ("B", "P", "R1a", "R1b"):
        s, h = move[1], move[2]
        if not 0 <= s <= len(ev):
            _fail(move, f"no slice {s}")
        count = len(diagram.stacks[s])
        if kind == "B":
            if not 1 <= h <= count + 1:
                _fail(move, f"height {h} out of range for {count} strands")
            ins = [("L", h), ("R", h)]
        elif kind == "P":
            if not 1 <= h <= count - 1:
                _fail(move, f"no strand pair at heights {h}, {h + 1}")
            if gf_mode:
                stack = diagram.stacks[s]
                _check_pinch_grading(diagram, stack[h - 1], stack[h])
            ins = [("R", h), ("L", h)]
        elif kind == "R1a":
            if not 1 <= h <= count:
                _fail(move, f"no strand at height {h}")
            ins = [("L", h + 1), ("X", h), ("R", h + 1)]
        else:
            if not 1 <= h <= count:
                _fail(move, f"no strand at height {h}")
            ins = [("L", h), ("X", h + 1), ("R", h)]
        return _rebuild(ev[:s] + ins + ev[s:], move), s, s, s + len(ins)

    e = move[1]

    if kind == "PM":
        if not 0 <= e < len(ev) - 1:
            _fail(move, f"no event pair at {e}")
        (ka, pa), (kb, pb) = ev[e], ev[e + 1]
        if (ka, kb) != ("R", "L") or pa != pb:
            _fail(move, f"events at {e}, {e + 1} are not a matched R,L pair")
        if gf_mode:
            _check_merge_grading(diagram, e)
        return _rebuild(ev[:e] + ev[e + 2:], move), e, e + 2, e

    if kind in ("R1a-", "R1b-"):
        if not 0 <= e <= len(ev) - 3:
            _fail(move, f"no event triple at {e}")
        (k1, p1), (k2, p2), (k3, p3) = ev[e:e + 3]
        want = p1 - 1 if kind == "R1a-" else p1 + 1
        if (k1, k2, k3) != ("L", "X", "R") or p2 != want or p3 != p1:
            _fail(move, f"events at {e}..{e + 2} are not a fish")
        return _rebuild(ev[:e] + ev[e + 3:], move), e, e + 3, e

    if kind in ("R2u", "R2d"):
        if not 0 <= e < len(ev):
            _fail(move, f"no event {e}")
        k, q = ev[e]
        if k not in ("L", "R"):
            _fail(move, f"event {e} is not a cusp")
        count = len(diagram.stacks[e])
        if kind == "R2u":
            if q < 2:
                _fail(move, "no strand above the cusp")
            repl = ([("L", q - 1), ("X", q), ("X", q - 1)] if k == "L"
                    else [("X", q - 1), ("X", q), ("R", q - 1)])
        else:
            need = q if k == "L" else q + 2
            if count < need:
                _fail(move, "no strand below the cusp")
            repl = ([("L", q + 1), ("X", q), ("X", q + 1)] if k == "L"
                    else [("X", q + 1), ("X", q), ("R", q + 1)])
        return _rebuild(ev[:e] + repl + ev[e + 1:], move), e, e + 1, e + 3

    if kind in ("R2u-", "R2d-"):
        if not 0 <= e <= len(ev) - 3:
            _fail(move, f"no event triple at {e}")
        (k1, p1), (k2, p2), (k3, p3) = ev[e:e + 3]
        step = 1 if kind == "R2u-" else -1
        if ((k1, k2, k3) == ("L", "X", "X") and p2 == p1 + step
                and p3 == p1):
            repl = [("L", p1 + step)]
        elif ((k1, k2, k3) == ("X", "X", "R") and p2 == p1 + step
                and p3 == p1):
            repl = [("R", p1 + step)]
        else:
            _fail(move, f"events at {e}..{e + 2} do not match the pattern")
        return _rebuild(ev[:e] + repl + ev[e + 3:], move), e, e + 3, e + 1

    if kind == "R3":
        if not 0 <= e <= len(ev) - 3:
            _fail(move, f"no event triple at {e}")
        (k1, p1), (k2, p2), (k3, p3) = ev[e:e + 3]
        if (k1, k2, k3) != ("X", "X", "X") or p3 != p1 or abs(p2 - p1) != 1:
            _fail(move, f"events at {e}..{e + 2} are not a triangle")
        repl = [("X", p2), ("X", p1), ("X", p2)]
        return _rebuild(ev[:e] + repl + ev[e + 3:], move), e, e + 3, e + 3

    if kind in ("C", "Ch"):
        if not 0 <= e < len(ev) - 1:
            _fail(move, f"no event pair at {e}")
        first, second = ev[e], ev[e + 1]
        s0 = list(diagram.stacks[e])
        s1 = diagram.stacks[e + 1]
        s2 = list(diagram.stacks[e + 2])
        pa = _participants(first, s0, s1)
        pb = _participants(second, s1, s2)
        if set(pa) & set(pb):
            _fail(move, "events share a strand")
        s2_pos = {w: i for i, w in enumerate(s2)}
        high = kind == "Ch"
        try:
            new_second, mid = _reposition(second, pb, s0, s2_pos, high)
            new_first, end = _reposition(first, pa, mid, s2_pos, high)
        except DomainError as err:
            _fail(move, str(err))
        if end != s2:
            _fail(move, "strands interleave vertically")
        events = ev[:e] + [new_second, new_first] + ev[e + 2:]
        return _rebuild(events, move), e, e + 2, e + 2

    raise AssertionError(f"unhandled move kind {kind!r}")


def invert_move(diagram, move):
    """The move undoing `move`, so that applying move then the result
    returns to `diagram` (same event word).  Births have no inverse in
    the move set.

    INPUT: the diagram the move is about to be applied to.
    """
    kind = move[0]
    if kind == "B":
        raise DomainError("a birth has no inverse move")
    if kind == "P":
        return ("PM", move[1])
    if kind == "PM":
        return ("P", move[1], diagram.events[move[1]][1])
    if kind in ("R1a", "R1b", "R2u", "R2d"):
        return (kind + "-", move[1])
    if kind in ("R1a-", "R1b-"):
        p = diagram.events[move[1]][1]
        h = p - 1 if kind == "R1a-" else p
        return (kind[:-1], move[1], h)
    if kind in ("R2u-", "R2d-"):
        return (kind[:-1], move[1])
    if kind == "R3":
        return move
    if kind in ("C", "Ch"):
        # commuting back past a dying pair may need the other placement
        after = apply_move(diagram, move)
        for cand in (("C", move[1]), ("Ch", move[1])):
            try:
                if apply_move(after, cand).word == diagram.word:
                    return cand
            except DomainError:
                pass
        raise AssertionError(f"no faithful inverse for {move!r}")
    raise DomainError(f"bad move {move!r}")


def isotopy_candidates(diagram, max_crossings=12):
    """Candidate isotopy moves (no B/P/PM) worth trying on a diagram.

    Candidates are not guaranteed applicable; callers filter through
    apply_move.  Fish growth is suppressed once the crossing count
    reaches max_crossings so random walks stay bounded.
    """
    cands = []
    if len(diagram.crossings) < max_crossings:
        for s in range(len(diagram.events) + 1):
            for h in range(1, len(diagram.stacks[s]) + 1):
                cands.append(("R1a", s, h))
                cands.append(("R1b", s, h))
    for e in range(len(diagram.events)):
        for kind in ("R1a-", "R1b-", "R2u", "R2d", "R2u-", "R2d-",
                     "R3", "C", "Ch"):
            cands.append((kind, e))
    return cands


class CobordismTrace:
    """A start front plus a move list that replays to the end front.

    gf_mode=True enforces the pinch grading checks on every P and PM
    during replay.
    """

    def __init__(self, start, moves, gf_mode=False):
        self.start = start
        self.moves = [tuple(m) for m in moves]
        self.gf_mode = gf_mode

    def __repr__(self):
        return (f"CobordismTrace({self.start.word!r}, {len(self.moves)} "
                f"moves, gf_mode={self.gf_mode})")


def parse_trace(text, gf_mode=False):
    """Parse a trace file: first line is the start word (may be empty),
    each following nonblank line is one move.  '#' starts a comment."""
    lines = text.splitlines()
    start = parse_front(lines[0] if lines else "")
    moves = []
    for line in lines[1:]:
        body = line.split("#", 1)[0].strip()
        if body:
            moves.append(parse_move(body))
    return CobordismTrace(start, moves, gf_mode=gf_mode)


def format_trace(trace):
    out = [trace.start.word]
    out.extend(format_move(m) for m in trace.moves)
    return "\n".join(out) + "\n"


def _overlap(old, new, w0, w1_old, w1_new):
    """Map each component of `new` to the set of components of `old` it
    shares a strand cell with, matching slices outside the rewritten
    window.  A component with no overlap was created inside the window."""
    shift = w1_new - w1_old
    found = defaultdict(set)
    pairs = [(t, t) for t in range(w0 + 1)]
    pairs += [(t, t + shift) for t in range(w1_old, len(old.events) + 1)]
    for t, tn in set(pairs):
        so = old.stacks[t]
        sn = new.stacks[tn]
        assert len(so) == len(sn)
        for p in range(len(so)):
            found[new.comp_of[sn[p]]].add(old.comp_of[so[p]])
    return found


def _replay(trace):
    d = trace.start
    parent = list(range(d.n_components))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    piece_of = list(range(d.n_components))
    births = pinches = 0
    for move in trace.moves:
        new_d, w0, w1_old, w1_new = _apply(d, move, trace.gf_mode)
        kind = move[0]
        if kind == "B":
            births += 1
        elif kind in ("P", "PM"):
            pinches += 1
        overlap = _overlap(d, new_d, w0, w1_old, w1_new)
        next_piece_of = []
        for c in range(new_d.n_components):
            olds = overlap.get(c)
            if not olds:
                assert kind == "B", f"untracked component after {kind}"
                parent.append(len(parent))
                next_piece_of.append(len(parent) - 1)
            else:
                roots = sorted({find(piece_of[o]) for o in olds})
                for r in roots[1:]:
                    parent[r] = roots[0]
                next_piece_of.append(roots[0])
        piece_of = next_piece_of
        d = new_d
    pieces = len({find(p) for p in piece_of}) if piece_of else 0
    return d, births, pinches, pieces


def trace_summary(trace):
    """Replay a trace and report the surgery bookkeeping.

    OUTPUT: dict with end (FrontDiagram), births, pinches,
    chi = births - pinches, components (of the end front), pieces
    (connected pieces of the cobordism surface), and genus.  Genus
    (2 - components - chi) / 2 is a Fraction and is only reported when
    the trace starts from the empty front, i.e. the surface is a filling
    of the end front; other traces get genus None.

    >>> t = parse_trace("\\nB 0 1")
    >>> trace_summary(t)["genus"]
    Fraction(0, 1)
    """
    end, births, pinches, pieces = _replay(trace)
    chi = births - pinches
    is_filling = trace.start.n_ids == 0
    genus = None
    if is_filling and trace.moves:
        if pieces > 1:
            raise DomainError(
                "disconnected filling: genus per component not defined "
                f"({pieces} pieces)")
        genus = Fraction(2 - end.n_components - chi, 2)
    return {
        "end": end,
        "births": births,
        "pinches": pinches,
        "chi": chi,
        "components": end.n_components,
        "pieces": pieces,
        "genus": genus,
    }
