"""
Lattice Service - Exact Quadratic Forms

Gram matrices of line configurations (optionally with the hyperplane class
h, h^2 = 4, h . line = 1), exact rank and signature by congruence
diagonalization over the rationals, and the exhaustive rank check of the
quadrangle-free configurations around a pentagon.
"""

import csv
import io
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import networkx as nx
from sympy import Matrix

from com.mhire.qlines.config.config import Config

logger = logging.getLogger(__name__)


@dataclass
class GramForm:
    matrix: List[List[int]]
    labels: List[str] = dataclass_field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.matrix[i][j] == self.matrix[j][i] for i in range(n) for j in range(n))

    def to_json(self) -> str:
        return json.dumps(self.matrix)

    @classmethod
    def from_json(cls, text: str) -> "GramForm":
        matrix = json.loads(text)
        if not isinstance(matrix, list) or any(len(row) != len(matrix) for row in matrix):
            raise ValueError("a Gram matrix is a square array of arrays")
        return cls([[int(v) for v in row] for row in matrix])


@dataclass(frozen=True)
class SignatureReport:
    rank: int
    n_plus: int
    n_minus: int
    n_zero: int


def gram_from_graph(graph: nx.Graph, with_h: bool = False, nodes: Optional[Sequence] = None) -> GramForm:
    """-2 on the diagonal, edge counts off it; with_h appends the hyperplane class."""
    order = list(nodes) if nodes is not None else sorted(graph.nodes)
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    size = n + 1 if with_h else n
    m = [[0] * size for _ in range(size)]
    for v in order:
        i = index[v]
        m[i][i] = -2 + 2 * graph.number_of_edges(v, v)
    for a, b in graph.edges(order):
        if a == b or a not in index or b not in index:
            continue
        i, j = index[a], index[b]
        m[i][j] = m[j][i] = graph.number_of_edges(a, b)
    labels = [str(v) for v in order]
    if with_h:
        for i in range(n):
            m[i][n] = m[n][i] = 1
        m[n][n] = 4
        labels.append("h")
    return GramForm(m, labels)


def diagonalize(form: GramForm) -> List[Fraction]:
    """Diagonal of a rational congruence diagonalization."""
    a = [[Fraction(v) for v in row] for row in form.matrix]
    n = len(a)
    diagonal = []
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                diagonal.extend([Fraction(0)] * (n - k))
                break
            i, j = pair
            # row/column i += row/column j makes the diagonal entry 2 a_ij
            for c in range(n):
                a[i][c] += a[j][c]
            for r in range(n):
                a[r][i] += a[r][j]
            pivot = i
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            for row in a:
                row[k], row[pivot] = row[pivot], row[k]
        d = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
                for r in range(k, n):
                    a[r][i] -= f * a[r][k]
        diagonal.append(d)
    return diagonal


def signature(form: GramForm, verify: bool = False) -> SignatureReport:
    diagonal = diagonalize(form)
    plus = sum(1 for d in diagonal if d > 0)
    minus = sum(1 for d in diagonal if d < 0)
    report = SignatureReport(plus + minus, plus, minus, len(diagonal) - plus - minus)
    if verify:
        expected = Matrix(form.matrix).rank() if form.size else 0
        if expected != report.rank:
            raise ArithmeticError(f"rank {report.rank} disagrees with sympy rank {expected}")
    return report


def picard_rank_bound_check(form: GramForm, delta: int) -> bool:
    """Whether the form can sit inside a lattice of signature (1, delta - 1)."""
    sig = signature(form)
    return sig.n_plus <= 1 and sig.rank <= delta


# quadrangle-free configurations

@dataclass(frozen=True)
class ConfigurationRow:
    a: int
    b: int
    c: int
    d: int
    rank: int
    lines_rank: int


@dataclass
class EnumerationResult:
    delta: int
    rows: List[ConfigurationRow]

    @property
    def counterexamples(self) -> List[ConfigurationRow]:
        return [r for r in self.rows if r.rank <= self.delta]

    @property
    def flagged(self) -> List[ConfigurationRow]:
        """Tuples whose lines alone span a lattice of rank at most delta."""
        return [r for r in self.rows if r.lines_rank <= self.delta]

    @property
    def min_rank(self) -> int:
        return min(r.rank for r in self.rows)

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["a", "b", "c", "d", "rank", "lines_rank"])
        for r in self.rows:
            writer.writerow([r.a, r.b, r.c, r.d, r.rank, r.lines_rank])
        return out.getvalue()


def configuration_graph(a: int, b: int, c: int, d: int) -> nx.Graph:
    """l, m_i, m_j with a, b, c pendant lines and d pentagon pairs closing l - m_i - x - y - m_j - l."""
    g = nx.Graph()
    g.add_edges_from([("l", "mi"), ("l", "mj")])
    for k in range(a):
        g.add_edge("l", f"a{k}")
    for k in range(b):
        g.add_edge("mi", f"b{k}")
    for k in range(c):
        g.add_edge("mj", f"c{k}")
    for k in range(d):
        g.add_edges_from([("mi", f"x{k}"), (f"x{k}", f"y{k}"), (f"y{k}", "mj")])
    return g


def configuration_tuples(delta: int) -> List[Tuple[int, int, int, int]]:
    total = delta + 2 - 4
    out = []
    for d in range(total // 2 + 1):
        rest = total - 2 * d
        for a in range(rest + 1):
            for b in range(rest - a + 1):
                out.append((a, b, rest - a - b, d))
    return out


def _configuration_row(values: Tuple[int, int, int, int]) -> ConfigurationRow:
    g = configuration_graph(*values)
    rank = signature(gram_from_graph(g, with_h=True)).rank
    lines_rank = signature(gram_from_graph(g)).rank
    return ConfigurationRow(*values, rank=rank, lines_rank=lines_rank)


def quadrangle_free_enumeration(delta: int) -> EnumerationResult:
    """Rank of every configuration with a + b + c + 2d + 4 = delta + 2."""
    if delta not in (20, 22):
        raise ValueError("delta is 20 or 22")
    tuples = configuration_tuples(delta)
    with ThreadPoolExecutor(max_workers=Config().threads) as pool:
        rows = list(pool.map(_configuration_row, tuples))
    result = EnumerationResult(delta, rows)
    logger.info("delta=%d: %d configurations, minimum rank %d, %d counterexamples, %d flagged",
                delta, len(rows), result.min_rank, len(result.counterexamples), len(result.flagged))
    return result
