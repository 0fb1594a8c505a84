"""Positive dependency graph, loop atoms, tightness."""

from dataclasses import dataclass, field

from .program import GroundProgram


@dataclass
class DependencyGraph:
    """Directed graph over atom ids.

    There is an edge (y, x) for every rule with y in the head and x in the
    positive body: heads depend on what supports them.
    """

    num_nodes: int
    edges: set[tuple[int, int]]
    successors: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        if not self.successors:
            succ: dict[int, list[int]] = {v: [] for v in range(self.num_nodes)}
            for y, x in sorted(self.edges):
                succ[y].append(x)
            self.successors = succ


def build_dependency_graph(program: GroundProgram) -> DependencyGraph:
    edges = set()
    for rule in program.rules:
        for y in rule.head:
            for x in rule.pos_body:
                edges.add((y, x))
    return DependencyGraph(program.num_atoms, edges)


def _sccs(graph: DependencyGraph):
    """Tarjan's algorithm, iterative. Yields each SCC as a list of nodes."""
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    counter = 0
    sccs = []

    for root in range(graph.num_nodes):
        if root in index:
            continue
        work = [(root, iter(graph.successors[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, succs = work[-1]
            advanced = False
            for nxt in succs:
                if nxt not in index:
                    index[nxt] = low[nxt] = counter
                    counter += 1
                    stack.append(nxt)
                    on_stack.add(nxt)
                    work.append((nxt, iter(graph.successors[nxt])))
                    advanced = True
                    break
                if nxt in on_stack:
                    low[node] = min(low[node], index[nxt])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
            if low[node] == index[node]:
                component = []
                while True:
                    member = stack.pop()
                    on_stack.remove(member)
                    component.append(member)
                    if member == node:
                        break
                sccs.append(component)
    return sccs


def loop_atoms(graph: DependencyGraph) -> frozenset[int]:
    """Atoms lying on a directed cycle: members of a multi-node SCC, plus
    self-looped nodes."""
    loops = set()
    for component in _sccs(graph):
        if len(component) > 1:
            loops.update(component)
    for y, x in graph.edges:
        if y == x:
            loops.add(x)
    return frozenset(loops)


def is_tight(program: GroundProgram) -> bool:
    return not loop_atoms(build_dependency_graph(program))
