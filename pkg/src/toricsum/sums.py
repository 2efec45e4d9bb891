"""Sums of toric ideals over disjoint or single shared variables.

Two kernels sharing exactly one variable combine into a block matrix

    [[A1', 0,   0],
     [0,   A2', 0],
     [a1,  a2,  g]]

after each side is pinned so the shared variable maps to a single
parameter power and the pinned exponents are rescaled to their lcm ``g``.
A family of ideals combines the same way along the edges of its sharing
graph, provided every connected component is a tree; components are then
joined block-diagonally.

The reported dimension is always the rank of the assembled matrix.  Two
closed-form predictions are carried along for comparison and flagged when
they disagree with each other or with the rank.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence

from .binomials import VariableSet
from .exact_linalg import IntegerMatrix
from .oracle import DegreeBound, enumerate_kernel_binomials
from .parametrization import (
    ConstructionError,
    HomogeneityCertificate,
    Parametrization,
    dimension,
    homogeneity_certificate,
    is_maximal_rank,
    normalize_pin,
)


@dataclass(frozen=True)
class SumConstruction:
    """Assembled two-ideal sum with its dimension bookkeeping.

    ``rank_dimension`` is computed from the matrix and is authoritative;
    ``predicted_dimension`` is dim(I1) + dim(I2) - 1.
    """

    result: Parametrization
    gamma: int
    predicted_dimension: int
    rank_dimension: int
    certificate: HomogeneityCertificate


@dataclass(frozen=True)
class GraphComponent:
    vertices: tuple[int, ...]
    edge_count: int
    is_tree: bool


@dataclass(frozen=True)
class IdealFamilyGraph:
    """Sharing graph: one vertex per ideal, an edge per shared variable."""

    ids: tuple[str, ...]
    variable_sets: tuple[VariableSet, ...]
    edges: tuple[tuple[int, int, str], ...]
    components: tuple[GraphComponent, ...]

    @property
    def k(self) -> int:
        return len(self.ids)

    @property
    def r(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class FamilyReport:
    """Dimension accounting for a family sum.

    ``iterated_prediction`` is sum(dims) - (k - r), the value obtained by
    iterating the two-ideal dimension formula along the trees;
    ``global_formula`` is sum(dims) + r - k + 1.  The two differ by one
    whenever any merging happens, so ``formulas_disagree`` is set unless
    rank, iterated and global values all coincide; the rank is
    authoritative.
    """

    graph: IdealFamilyGraph
    input_dimensions: tuple[int, ...]
    rank_dimension: int
    iterated_prediction: int
    global_formula: int
    formulas_disagree: bool
    merges: tuple[tuple[str, str, str], ...]


def sum_disjoint(ps: Sequence[Parametrization]) -> Parametrization:
    """Block-diagonal sum of parametrizations on disjoint variables.

    Parameters are renamed with per-block prefixes so the parameter sets
    are disjoint as well.  A single input is returned unchanged; an empty
    input gives the empty parametrization.
    """
    ps = list(ps)
    if not ps:
        return Parametrization(VariableSet(()), VariableSet(()), IntegerMatrix(0, 0, ()))
    if len(ps) == 1:
        return ps[0]
    seen: dict[str, int] = {}
    for k, p in enumerate(ps):
        for name in p.vars:
            if name in seen:
                raise ConstructionError(
                    f"variable {name!r} appears in inputs {seen[name] + 1} and {k + 1}; "
                    "disjoint sums require disjoint variable sets"
                )
            seen[name] = k

    var_names: list[str] = []
    param_names: list[str] = []
    for k, p in enumerate(ps):
        var_names.extend(p.vars)
        param_names.extend(f"t{k + 1}_{name}" for name in p.params)

    total_rows = sum(p.matrix.rows for p in ps)
    total_cols = sum(p.matrix.cols for p in ps)
    rows: list[list[int]] = []
    col_offset = 0
    for p in ps:
        for row in p.matrix.entries:
            padded = [0] * col_offset + list(row) + [0] * (total_cols - col_offset - p.matrix.cols)
            rows.append(padded)
        col_offset += p.matrix.cols
    matrix = IntegerMatrix.from_rows(rows, cols=total_cols)
    assert matrix.rows == total_rows
    return Parametrization(
        VariableSet(tuple(param_names)),
        VariableSet(tuple(var_names)),
        matrix,
        any(p.allow_degenerate for p in ps),
    )


def _pinned_last(p: Parametrization, shared: str) -> tuple[Parametrization, int]:
    """Reshape so the shared variable is the last column, pinned on the last row.

    Runs the pin normalization unless the matrix is already maximal rank
    with a single-support shared column, in which case only the row and
    column permutations are applied.  Returns the reshaped parametrization
    and the positive pinned exponent.
    """
    idx = p.vars.index(shared)
    col = p.column(idx)
    if not any(col):
        raise ConstructionError(f"shared variable {shared!r} maps to 1 and cannot be pinned")
    support = [k for k, x in enumerate(col) if x]
    if len(support) == 1 and is_maximal_rank(p):
        pinned, j = p, support[0]
    else:
        pin = normalize_pin(p, idx)
        pinned, j = pin.parametrization, pin.pinned_param_index

    gamma = pinned.matrix.column(idx)[j]
    entries = [list(row) for row in pinned.matrix.entries]
    if gamma < 0:
        # Row negation keeps the kernel; it only flips the parameter.
        entries[j] = [-x for x in entries[j]]
        gamma = -gamma

    row_order = [k for k in range(len(entries)) if k != j] + [j]
    col_order = [c for c in range(len(pinned.vars)) if c != idx] + [idx]
    reshaped = IntegerMatrix.from_rows(
        [[entries[r][c] for c in col_order] for r in row_order],
        cols=len(col_order),
    )
    vars_ = VariableSet(tuple(pinned.vars.names[c] for c in col_order))
    params = VariableSet(tuple(pinned.params.names[r] for r in row_order))
    return Parametrization(params, vars_, reshaped, pinned.allow_degenerate), gamma


def _scale_last_row(p: Parametrization, factor: int) -> Parametrization:
    if factor == 1:
        return p
    entries = [list(row) for row in p.matrix.entries]
    entries[-1] = [x * factor for x in entries[-1]]
    return Parametrization(
        p.params, p.vars, IntegerMatrix.from_rows(entries, cols=p.matrix.cols), p.allow_degenerate
    )


def _warn_if_variable_unused(p: Parametrization, shared: str, degree: int, side: str) -> None:
    idx = p.vars.index(shared)
    bound = DegreeBound(degree, 0)
    if not any(b.involves(idx) for b in enumerate_kernel_binomials(p, bound)):
        warnings.warn(
            f"no kernel binomial of the {side} ideal involves {shared!r} up to degree "
            f"{degree}; the shared variable may not occur in any generator",
            stacklevel=3,
        )


def sum_shared(
    p1: Parametrization,
    p2: Parametrization,
    shared: str,
    *,
    usage_degree: Optional[int] = 2,
) -> SumConstruction:
    """Sum of two homogeneous kernels sharing exactly one variable.

    Both inputs are pinned automatically so the shared variable maps to a
    single parameter power, the pinned exponents are rescaled to their
    lcm, and the blocks are assembled over fresh disjoint parameters
    (prefixes ``t1_`` and ``t2_``, shared parameter ``s``).  The result
    carries a homogeneity certificate stitched from the two sides.

    ``usage_degree`` bounds a cheap search for a kernel binomial actually
    involving the shared variable on each side; a miss is a warning, not
    an error.  Pass None to skip the search.
    """
    shared_set = set(p1.vars.names) & set(p2.vars.names)
    if shared_set != {shared}:
        raise ConstructionError(
            f"variable sets share {sorted(shared_set)}, expected exactly [{shared!r}]"
        )
    if homogeneity_certificate(p1) is None:
        raise ConstructionError("first input is not homogeneous (no grading vector)")
    if homogeneity_certificate(p2) is None:
        raise ConstructionError("second input is not homogeneous (no grading vector)")

    if usage_degree is not None:
        _warn_if_variable_unused(p1, shared, usage_degree, "first")
        _warn_if_variable_unused(p2, shared, usage_degree, "second")

    pinned1, gamma1 = _pinned_last(p1, shared)
    pinned2, gamma2 = _pinned_last(p2, shared)
    gamma = lcm(gamma1, gamma2)
    scaled1 = _scale_last_row(pinned1, gamma // gamma1)
    scaled2 = _scale_last_row(pinned2, gamma // gamma2)

    cert1 = homogeneity_certificate(scaled1)
    cert2 = homogeneity_certificate(scaled2)
    assert cert1 is not None and cert2 is not None
    assert cert1.omega[-1] == Fraction(1, gamma) == cert2.omega[-1]

    m1 = scaled1.matrix.rows - 1
    m2 = scaled2.matrix.rows - 1
    n1 = scaled1.matrix.cols - 1
    n2 = scaled2.matrix.cols - 1
    rows: list[list[int]] = []
    for k in range(m1):
        rows.append(list(scaled1.matrix.entries[k][:n1]) + [0] * n2 + [0])
    for k in range(m2):
        rows.append([0] * n1 + list(scaled2.matrix.entries[k][:n2]) + [0])
    rows.append(
        list(scaled1.matrix.entries[m1][:n1]) + list(scaled2.matrix.entries[m2][:n2]) + [gamma]
    )
    matrix = IntegerMatrix.from_rows(rows, cols=n1 + n2 + 1)

    vars_ = VariableSet(tuple(scaled1.vars.names[:n1]) + tuple(scaled2.vars.names[:n2]) + (shared,))
    params = VariableSet(
        tuple(f"t1_{name}" for name in scaled1.params.names[:m1])
        + tuple(f"t2_{name}" for name in scaled2.params.names[:m2])
        + ("s",)
    )
    result = Parametrization(
        params, vars_, matrix, p1.allow_degenerate or p2.allow_degenerate
    )

    certificate = HomogeneityCertificate(
        cert1.omega[:-1] + cert2.omega[:-1] + (Fraction(1, gamma),)
    )
    assert certificate.certifies(result)

    return SumConstruction(
        result=result,
        gamma=gamma,
        predicted_dimension=dimension(p1) + dimension(p2) - 1,
        rank_dimension=dimension(result),
        certificate=certificate,
    )


def build_family_graph(ideals: Sequence[tuple[str, VariableSet]]) -> IdealFamilyGraph:
    """Sharing graph of a family, rejecting pairs with two or more shared variables."""
    ids = [name for name, _ in ideals]
    if len(set(ids)) != len(ids):
        dup = next(n for i, n in enumerate(ids) if n in ids[:i])
        raise ValueError(f"duplicate ideal identifier {dup!r}")
    vsets = [vs for _, vs in ideals]
    k = len(ids)

    name_sets = [set(vs.names) for vs in vsets]
    edges: list[tuple[int, int, str]] = []
    for i in range(k):
        for j in range(i + 1, k):
            shared = [n for n in vsets[i].names if n in name_sets[j]]
            if len(shared) >= 2:
                raise ConstructionError(
                    f"ideals {ids[i]!r} and {ids[j]!r} share {len(shared)} variables "
                    f"({', '.join(shared)}); at most one shared variable is allowed"
                )
            if shared:
                edges.append((i, j, shared[0]))

    adjacency: dict[int, set[int]] = {v: set() for v in range(k)}
    for i, j, _ in edges:
        adjacency[i].add(j)
        adjacency[j].add(i)
    seen: set[int] = set()
    components: list[GraphComponent] = []
    for start in range(k):
        if start in seen:
            continue
        stack = [start]
        comp = set()
        while stack:
            v = stack.pop()
            if v in comp:
                continue
            comp.add(v)
            stack.extend(adjacency[v] - comp)
        seen |= comp
        edge_count = sum(1 for i, j, _ in edges if i in comp)
        components.append(
            GraphComponent(tuple(sorted(comp)), edge_count, edge_count == len(comp) - 1)
        )

    return IdealFamilyGraph(tuple(ids), tuple(vsets), tuple(edges), tuple(components))


def sum_family(
    ps: Sequence[Parametrization],
    names: Optional[Sequence[str]] = None,
    *,
    usage_degree: Optional[int] = 2,
) -> tuple[Parametrization, FamilyReport]:
    """Sum a family of kernels along its sharing graph by leaf peeling.

    Every connected component must be a tree; within a component the
    lowest-indexed leaf is repeatedly merged into its neighbour with
    :func:`sum_shared`, and the component results are joined with
    :func:`sum_disjoint`.  Ideals that take part in a merge must be
    homogeneous; isolated vertices are exempt.
    """
    ps = list(ps)
    if names is None:
        names = [f"I{k + 1}" for k in range(len(ps))]
    names = list(names)
    if len(names) != len(ps):
        raise ValueError("one name per parametrization is required")

    graph = build_family_graph([(names[k], p.vars) for k, p in enumerate(ps)])
    for comp in graph.components:
        if not comp.is_tree:
            members = ",".join(names[v] for v in comp.vertices)
            raise ConstructionError(
                f"component {{{members}}} contains a cycle; the sharing graph must be a tree"
            )
    for comp in graph.components:
        if len(comp.vertices) < 2:
            continue
        for v in comp.vertices:
            if homogeneity_certificate(ps[v]) is None:
                raise ConstructionError(
                    f"ideal {names[v]!r} is not homogeneous (no grading vector) "
                    "and cannot enter a shared-variable sum"
                )

    merges: list[tuple[str, str, str]] = []
    component_results: list[Parametrization] = []
    for comp in graph.components:
        adj: dict[int, dict[int, str]] = {v: {} for v in comp.vertices}
        for i, j, var in graph.edges:
            if i in adj:
                adj[i][j] = var
                adj[j][i] = var
        current = {v: ps[v] for v in comp.vertices}
        while len(current) > 1:
            leaf = min(v for v in current if len(adj[v]) == 1)
            neighbour, var = next(iter(adj[leaf].items()))
            construction = sum_shared(
                current[leaf], current[neighbour], var, usage_degree=usage_degree
            )
            current[neighbour] = construction.result
            merges.append((names[leaf], names[neighbour], var))
            del current[leaf]
            del adj[neighbour][leaf]
            del adj[leaf]
        component_results.append(next(iter(current.values())))

    combined = sum_disjoint(component_results)
    dims = tuple(dimension(p) for p in ps)
    k, r = graph.k, graph.r
    iterated = sum(dims) - (k - r)
    global_form = sum(dims) + r - k + 1
    rank_dim = dimension(combined)
    report = FamilyReport(
        graph=graph,
        input_dimensions=dims,
        rank_dimension=rank_dim,
        iterated_prediction=iterated,
        global_formula=global_form,
        formulas_disagree=len({rank_dim, iterated, global_form}) > 1,
        merges=tuple(merges),
    )
    return combined, report
