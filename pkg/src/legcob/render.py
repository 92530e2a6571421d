"""ASCII and SVG rendering of front diagrams.

Layout is deterministic: event index fixes the x coordinate, strand
position fixes the y coordinate.  Cusps are drawn in SVG as the meeting
point of two cubic curves; crossings are plain intersections with no
over/under break.
"""

_PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
            "#8c564b", "#17becf", "#7f7f7f"]


def render_front(diagram, format="ascii"):
    if format == "ascii":
        return render_ascii(diagram)
    if format == "svg":
        return render_svg(diagram)
    raise ValueError(f"unknown render format {format!r}")


def render_ascii(diagram):
    """One text row per strand position, one glyph column per event."""
    if not diagram.events:
        return "(empty front)\n"
    rows = diagram.max_strands
    width = 4 * len(diagram.events) + 1
    grid = [[" "] * width for _ in range(rows)]
    for s in range(len(diagram.events) + 1):
        x0 = 4 * s - 3 if s else 0
        for p in range(len(diagram.stacks[s])):
            for x in range(max(x0, 0), min(4 * s + 1, width)):
                grid[p][x] = "-"
    for i, (kind, pos) in enumerate(diagram.events):
        x = 4 * i + 2
        p = pos - 1
        if kind == "L":
            grid[p][x] = "/"
            grid[p + 1][x] = "\\"
        elif kind == "R":
            grid[p][x] = "\\"
            grid[p + 1][x] = "/"
        else:
            grid[p][x] = "X"
            grid[p + 1][x] = "X"
    lines = ["".join(r).rstrip() for r in grid]
    return "\n".join([diagram.word] + lines) + "\n"


def _strand_tracks(diagram):
    """Per id: (birth event, death event, [(slice, position 1-based), ...])."""
    born = {}
    died = {}
    for i, kind, pos, u, l in diagram.cusps:
        if kind == "L":
            born[u] = i
            born[l] = i
        else:
            died[u] = i
            died[l] = i
    tracks = {}
    for a in range(diagram.n_ids):
        pts = []
        for s in range(born[a] + 1, died[a] + 1):
            pts.append((s, diagram.stacks[s].index(a) + 1))
        tracks[a] = (born[a], died[a], pts)
    return tracks


def render_svg(diagram, dx=48, dy=28, margin=30):
    """Deterministic SVG 1.1 document for the front."""
    n_slices = len(diagram.events) + 1
    width = 2 * margin + dx * max(n_slices - 1, 1)
    height = 2 * margin + dy * max(diagram.max_strands + 1, 2)

    def sx(s):
        return margin + dx * s

    def sy(p):
        return margin + dy * p

    tracks = _strand_tracks(diagram)
    paths = []
    for a in range(diagram.n_ids):
        bi, di, pts = tracks[a]
        color = _PALETTE[diagram.comp_of[a] % len(_PALETTE)]
        cusp_b = (sx(bi + 0.5), sy(diagram.events[bi][1] + 0.5))
        cusp_d = (sx(di + 0.5), sy(diagram.events[di][1] + 0.5))
        d = [f"M {cusp_b[0]:.1f} {cusp_b[1]:.1f}"]
        x0, y0 = sx(pts[0][0]), sy(pts[0][1])
        d.append(f"C {cusp_b[0]:.1f} {y0:.1f} {(cusp_b[0] + x0) / 2:.1f}"
                 f" {y0:.1f} {x0:.1f} {y0:.1f}")
        for s, p in pts[1:]:
            d.append(f"L {sx(s):.1f} {sy(p):.1f}")
        xl, yl = sx(pts[-1][0]), sy(pts[-1][1])
        d.append(f"C {(cusp_d[0] + xl) / 2:.1f} {yl:.1f} {cusp_d[0]:.1f}"
                 f" {yl:.1f} {cusp_d[0]:.1f} {cusp_d[1]:.1f}")
        paths.append(f'<path d="{" ".join(d)}" fill="none" '
                     f'stroke="{color}" stroke-width="2"/>')
    body = "\n".join(paths)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}">\n'
            f'<rect width="{width}" height="{height}" fill="white"/>\n'
            f'{body}\n</svg>\n')


def render_points_svg(samples, width=480, height=320, margin=30):
    """Scatter SVG of front samples: first base coordinate across, z up.

    Samples need .x (tuple) and .z attributes; for a 2-d base only the
    x1 projection is drawn.  Layout is data-driven but deterministic
    (samples are re-sorted before drawing).
    """
    pts = sorted((q.x[0], q.z) for q in samples)
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}">\n'
            f'<rect width="{width}" height="{height}" fill="white"/>\n')
    if not pts:
        return head + "</svg>\n"
    xs = [p[0] for p in pts]
    zs = [p[1] for p in pts]
    x0, z0 = min(xs), min(zs)
    sx = (width - 2 * margin) / max(max(xs) - x0, 1e-9)
    sz = (height - 2 * margin) / max(max(zs) - z0, 1e-9)
    dots = "\n".join(
        f'<circle cx="{margin + (x - x0) * sx:.1f}" '
        f'cy="{height - margin - (z - z0) * sz:.1f}" r="1.6" '
        f'fill="{_PALETTE[0]}"/>' for x, z in pts)
    return head + dots + "\n</svg>\n"
