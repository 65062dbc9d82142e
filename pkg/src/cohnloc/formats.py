"""Plain-text formats for groups, matrices, complexes and Lambda matrices.

Blank lines and anything after ``#`` are ignored everywhere.

Group, permutation form (generators in image notation on ``0..degree-1``)::

    perm 3
    1 0 2
    1 2 0

Group, table form.  Without a ``gens`` line the table may use any labels
and is relabelled canonically.  With one, index 0 must be the identity and
the labelling is kept as given.  ``name`` lines are optional::

    table 2
    gens 1
    name 1 (0 1)
    0 1
    1 0

Group ring element: ``(c)*g<k>`` terms joined by `` + ``, or ``0``.

Matrix over Z[G], entries separated by `` | ``::

    matrix 1 2
    (2)*g0 + (-1)*g1 | 0

Complex of free Z[G]-modules, ``d_n`` written as a matrix body::

    complex 0 1
    rank 0 1
    rank 1 1
    boundary 1
    (2)*g0 + (-1)*g1

Boundary blocks with an empty side are omitted.
"""
from __future__ import annotations

from .complexes import FreeComplex
from .errors import InputError, ParseError
from .groupring import GroupRingMatrix, format_element, parse_element
from .groups import FiniteGroup, closure, group_from_permutations, validate_table
from .localization import format_lambda


def _lines(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line, what):
    try:
        return [int(t) for t in line.split()]
    except ValueError as exc:
        raise ParseError(f"expected integers in {what}: {line!r}") from exc


def _header(line, keyword, count):
    parts = line.split()
    if parts[0] != keyword or len(parts) != count + 1:
        raise ParseError(f"expected '{keyword}' header with {count} integer(s), got {line!r}")
    return _ints(" ".join(parts[1:]), f"{keyword} header")


# ------------------------------------------------------------------ groups

def format_group(G):
    out = [f"table {G.order}"]
    if G.generators:
        out.append("gens " + " ".join(map(str, G.generators)))
    else:
        out.append("gens")
    if G.element_names:
        out += [f"name {k} {nm}" for k, nm in enumerate(G.element_names)]
    out += [" ".join(map(str, row)) for row in G.table]
    return "\n".join(out) + "\n"


def parse_group(text):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty group file")
    kind = lines[0].split()[0]
    try:
        if kind == "perm":
            (degree,) = _header(lines[0], "perm", 1)
            gens = [_ints(ln, "permutation") for ln in lines[1:]]
            return group_from_permutations(degree, gens)
        if kind == "table":
            return _parse_table(lines)
    except ParseError:
        raise
    except InputError as exc:
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown group format {kind!r}")


def _parse_table(lines):
    from .groups import group_from_table

    (n,) = _header(lines[0], "table", 1)
    gens, names, rows = None, {}, []
    for ln in lines[1:]:
        head = ln.split()[0]
        if head == "gens":
            gens = tuple(_ints(ln[4:], "gens"))
        elif head == "name":
            parts = ln.split(None, 2)
            if len(parts) < 3:
                raise ParseError(f"bad name line {ln!r}")
            names[int(parts[1])] = parts[2]
        else:
            rows.append(_ints(ln, "table row"))
    if len(rows) != n:
        raise ParseError(f"expected {n} table rows, found {len(rows)}")
    if gens is None:
        return group_from_table(rows)
    if validate_table(rows) != 0:
        raise ParseError("with a gens line the identity must be element 0")
    if any(not 0 <= g < n for g in gens):
        raise ParseError("generator index out of range")
    if len(closure(0, list(gens), lambda a, b: rows[a][b], n)) != n:
        raise ParseError("listed generators do not generate the group")
    if names and sorted(names) != list(range(n)):
        raise ParseError("names must be given for every element or none")
    element_names = tuple(names[k] for k in range(n)) if names else None
    return FiniteGroup(tuple(map(tuple, rows)), gens, element_names)


# ---------------------------------------------------------------- matrices

def _format_rows(M):
    return [" | ".join(format_element(x) for x in row) for row in M.entries]


def _parse_rows(lines, group, rows, cols):
    if len(lines) != rows:
        raise ParseError(f"expected {rows} matrix rows, found {len(lines)}")
    grid = []
    for ln in lines:
        cells = [c.strip() for c in ln.split("|")]
        if len(cells) != cols:
            raise ParseError(f"expected {cols} entries in row {ln!r}")
        grid.append([parse_element(c, group) for c in cells])
    return GroupRingMatrix(group, grid, cols=cols)


def format_matrix(M):
    return "\n".join([f"matrix {M.rows} {M.cols}"] + _format_rows(M)) + "\n"


def parse_matrix(text, group):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty matrix file")
    r, c = _header(lines[0], "matrix", 2)
    return _parse_rows(lines[1:], group, r, c)


def format_lambda_matrix(M):
    out = [f"lambda-matrix {M.rows} {M.cols}"]
    for i in range(M.rows):
        for j in range(M.cols):
            out.append(f"[{i},{j}] {format_lambda(M[i, j])}")
    return "\n".join(out) + "\n"


# --------------------------------------------------------------- complexes

def format_complex(C):
    out = [f"complex {C.lo} {C.hi}"]
    out += [f"rank {n} {C.rank(n)}" for n in C.degrees]
    for n in range(C.lo + 1, C.hi + 1):
        d = C.boundary(n)
        if d.rows and d.cols:
            out.append(f"boundary {n}")
            out += _format_rows(d)
    return "\n".join(out) + "\n"


def parse_complex(text, group):
    lines = _lines(text)
    if not lines:
        raise ParseError("empty complex file")
    lo, hi = _header(lines[0], "complex", 2)
    if hi < lo:
        raise ParseError("complex needs lo <= hi")
    ranks, k = {}, 1
    while k < len(lines) and lines[k].startswith("rank"):
        n, r = _header(lines[k], "rank", 2)
        ranks[n] = r
        k += 1
    if sorted(ranks) != list(range(lo, hi + 1)):
        raise ParseError("one rank line per degree is required")
    bds = {}
    while k < len(lines):
        (n,) = _header(lines[k], "boundary", 1)
        if not lo < n <= hi:
            raise ParseError(f"boundary {n} outside the degree range")
        rows, cols = ranks[n - 1], ranks[n]
        bds[n] = _parse_rows(lines[k + 1:k + 1 + rows], group, rows, cols)
        k += 1 + rows
    try:
        return FreeComplex(group, lo, [ranks[n] for n in range(lo, hi + 1)], bds)
    except InputError as exc:
        raise ParseError(str(exc)) from exc
