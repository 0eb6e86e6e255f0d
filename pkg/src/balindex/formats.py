"""Text formats for matrices, edge lists, and certificates.

Matrix: first line n, then n whitespace-separated rows.
Edge list: first line "n m", then m lines "i j mult" with 1-based i < j,
optionally a final line "loops l_1 ... l_n".
Certificate: first line "n b", then one line "c s_1 ... s_n" per term with
the permutation as a 1-based image list.
"""

from __future__ import annotations

from .errors import ParseError
from .graphs import SignedMultigraph
from .matrices import IntMatrix, Permutation, SignedCombination


def _tokens(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line.split()


def _ints(parts, ln):
    try:
        return [int(p) for p in parts]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {parts!r}", ln) from exc


def parse_matrix(text: str) -> IntMatrix:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty matrix input")
    ln, head = lines[0]
    if len(head) != 1:
        raise ParseError(f"expected a single order, got {head!r}", ln)
    (n,) = _ints(head, ln)
    if n < 1:
        raise ParseError("order must be positive", ln)
    if len(lines) != n + 1:
        raise ParseError(f"expected {n} rows, got {len(lines) - 1}", ln)
    rows = []
    for ln, parts in lines[1:]:
        row = _ints(parts, ln)
        if len(row) != n:
            raise ParseError(f"expected {n} entries, got {len(row)}", ln)
        rows.append(row)
    return IntMatrix(rows)


def format_matrix(A: IntMatrix) -> str:
    body = "\n".join(" ".join(str(v) for v in row) for row in A.rows)
    return f"{A.n}\n{body}\n"


def parse_edge_list(text: str) -> tuple[SignedMultigraph, list[int] | None]:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty edge list input")
    ln, head = lines[0]
    if len(head) != 2:
        raise ParseError(f"expected 'n m', got {head!r}", ln)
    n, m = _ints(head, ln)
    if n < 1 or m < 0:
        raise ParseError("bad order or edge count", ln)
    g = SignedMultigraph(n)
    loops = None
    body = lines[1:]
    if len(body) not in (m, m + 1):
        raise ParseError(f"expected {m} edge lines, got {len(body)}", ln)
    for idx, (ln, parts) in enumerate(body):
        if idx == m:
            if parts[0] != "loops":
                raise ParseError("expected a 'loops' line", ln)
            loops = _ints(parts[1:], ln)
            if len(loops) != n:
                raise ParseError(f"expected {n} loop counts", ln)
            break
        if len(parts) != 3:
            raise ParseError(f"expected 'i j mult', got {parts!r}", ln)
        i, j, mult = _ints(parts, ln)
        if not (1 <= i < j <= n):
            raise ParseError(f"need 1 <= i < j <= {n}", ln)
        if g.get(i - 1, j - 1):
            raise ParseError(f"duplicate edge {{{i},{j}}}", ln)
        g.set(i - 1, j - 1, mult)
    return g, loops


def format_edge_list(G: SignedMultigraph, loops=None) -> str:
    edges = sorted(G.mult.items())
    out = [f"{G.n} {len(edges)}"]
    out += [f"{i + 1} {j + 1} {m}" for (i, j), m in edges]
    if loops is not None:
        out.append("loops " + " ".join(str(v) for v in loops))
    return "\n".join(out) + "\n"


def graph_matrix(G: SignedMultigraph, loops=None) -> IntMatrix:
    """Adjacency matrix with optional loop counts on the diagonal."""
    A = G.to_adjacency()
    if loops is None:
        return A
    if len(loops) != G.n:
        raise ValueError("loop list has wrong length")
    rows = [list(r) for r in A.rows]
    for i, l in enumerate(loops):
        rows[i][i] = l
    return IntMatrix(rows)


def parse_certificate(text: str) -> SignedCombination:
    lines = list(_tokens(text))
    if not lines:
        raise ParseError("empty certificate input")
    ln, head = lines[0]
    if len(head) != 2:
        raise ParseError(f"expected 'n coefficient_sum', got {head!r}", ln)
    n, total = _ints(head, ln)
    combo = SignedCombination(n)
    for ln, parts in lines[1:]:
        vals = _ints(parts, ln)
        if len(vals) != n + 1:
            raise ParseError(f"expected coefficient plus {n} images", ln)
        coeff, images = vals[0], vals[1:]
        try:
            perm = Permutation.from_one_based(images)
        except ValueError as exc:
            raise ParseError(str(exc), ln) from exc
        combo.add_term(perm, coeff)
    if combo.coefficient_sum() != total:
        raise ParseError(
            f"coefficient sum {combo.coefficient_sum()} does not match header {total}"
        )
    return combo


def format_certificate(C: SignedCombination) -> str:
    out = [f"{C.n} {C.coefficient_sum()}"]
    for perm, coeff in C.canonical_terms():
        out.append(f"{coeff} " + " ".join(str(v) for v in perm.one_based()))
    return "\n".join(out) + "\n"
