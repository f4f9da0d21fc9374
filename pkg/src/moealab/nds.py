"""Non-dominated sorting behind a single interface.

Four interchangeable methods: a brute-force reference (repeated peeling of
the non-dominated set), the classic fast non-dominated sort, ENS-SS
(sequential search, the default for two objectives) and the tree-based T-ENS
(default for three or more objectives).  All methods perform a *partial*
sort: ranking stops at the first front whose inclusion brings the number of
ranked individuals to at least ``n_sort``; that whole front is ranked and the
remaining rows carry the :data:`UNRANKED` sentinel.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

#: Sentinel front number for rows that the partial sort left unranked.
UNRANKED = np.inf

METHODS = ("auto", "brute", "fast", "ens_ss", "t_ens")


class Dominance(enum.Enum):
    A_DOMINATES = "a_dominates"
    B_DOMINATES = "b_dominates"
    INCOMPARABLE = "incomparable"
    EQUAL = "equal"


def dominates(a_obj, b_obj) -> Dominance:
    """Pairwise Pareto comparison of two objective vectors (minimization)."""
    a = np.asarray(a_obj, dtype=float)
    b = np.asarray(b_obj, dtype=float)
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError(f"objective vectors differ in shape: {a.shape} vs {b.shape}")
    a_le = bool(np.all(a <= b))
    b_le = bool(np.all(b <= a))
    if a_le and b_le:
        return Dominance.EQUAL
    if a_le:
        return Dominance.A_DOMINATES
    if b_le:
        return Dominance.B_DOMINATES
    return Dominance.INCOMPARABLE


@dataclass(frozen=True)
class FrontAssignment:
    """Front numbers (1-based, :data:`UNRANKED` where the sort stopped)."""

    front_no: np.ndarray
    max_front: int

    @property
    def ranked(self) -> np.ndarray:
        return np.isfinite(self.front_no)


def nd_sort(objectives, n_sort: int | None = None, method: str = "auto") -> FrontAssignment:
    """Partially sort ``objectives`` (rows) into non-dominated fronts.

    ``n_sort`` defaults to the number of rows (full sort).  ``method="auto"``
    selects ENS-SS for two objectives and T-ENS otherwise; requesting
    ``t_ens`` with fewer than three objectives falls back to ENS-SS.
    """
    obj = np.asarray(objectives, dtype=float)
    if obj.ndim != 2 or obj.shape[0] < 1:
        raise ValueError("objectives must be a non-empty 2-D matrix")
    n, m = obj.shape
    if n_sort is None:
        n_sort = n
    if not 1 <= n_sort <= n:
        raise ValueError(f"n_sort must be in [1, {n}], got {n_sort}")
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")

    if method == "auto":
        method = "ens_ss" if m <= 2 else "t_ens"
    if method == "t_ens" and m < 3:
        method = "ens_ss"

    if method == "brute":
        front_no, max_front = _brute(obj, n_sort)
    elif method == "fast":
        front_no, max_front = _fast(obj, n_sort)
    elif method == "ens_ss":
        front_no, max_front = _ens_ss(obj, n_sort)
    else:
        front_no, max_front = _t_ens(obj, n_sort)
    return FrontAssignment(front_no=front_no, max_front=max_front)


def _dominance_matrix(obj: np.ndarray) -> np.ndarray:
    """Boolean matrix D with D[i, j] true iff row i dominates row j."""
    le = np.all(obj[:, None, :] <= obj[None, :, :], axis=2)
    lt = np.any(obj[:, None, :] < obj[None, :, :], axis=2)
    return le & lt


def _brute(obj: np.ndarray, n_sort: int) -> tuple[np.ndarray, int]:
    """Reference method: repeatedly peel the non-dominated subset."""
    n = obj.shape[0]
    dom = _dominance_matrix(obj)
    front_no = np.full(n, UNRANKED)
    alive = np.ones(n, dtype=bool)
    ranked = 0
    front = 0
    while ranked < n_sort:
        front += 1
        has_dominator = (dom & alive[:, None]).any(axis=0)
        current = alive & ~has_dominator
        front_no[current] = front
        alive &= ~current
        ranked += int(current.sum())
    return front_no, front


def _fast(obj: np.ndarray, n_sort: int) -> tuple[np.ndarray, int]:
    """Fast non-dominated sort: dominance counts plus dominated lists."""
    n = obj.shape[0]
    dom = _dominance_matrix(obj)
    count = dom.sum(axis=0).astype(int)
    front_no = np.full(n, UNRANKED)
    current = np.flatnonzero(count == 0)
    front = 0
    ranked = 0
    while ranked < n_sort:
        front += 1
        front_no[current] = front
        ranked += len(current)
        if ranked >= n_sort:
            break
        released = dom[current].sum(axis=0)
        count -= released
        count[current] = -1
        current = np.flatnonzero(count == 0)
    return front_no, front


def _sorted_unique(obj: np.ndarray):
    """Unique rows in lexicographic order plus the inverse map and counts."""
    uniq, inverse = np.unique(obj, axis=0, return_inverse=True)
    counts = np.bincount(inverse, minlength=uniq.shape[0])
    return uniq, inverse.ravel(), counts


def _ens_ss(obj: np.ndarray, n_sort: int) -> tuple[np.ndarray, int]:
    """Efficient non-dominated sort with sequential search.

    Rows are deduplicated and processed in lexicographic order, so a
    candidate can only be dominated by members already assigned to the front
    under construction, and the check reduces to componentwise <= on the
    trailing objectives.
    """
    uniq, inverse, counts = _sorted_unique(obj)
    nu, m = uniq.shape
    tails = uniq[:, 1:]
    front_u = np.full(nu, UNRANKED)
    target = min(n_sort, obj.shape[0])
    ranked = 0
    front = 0
    members = np.empty((nu, max(m - 1, 1)), dtype=float)
    while ranked < target:
        front += 1
        k = 0
        for i in range(nu):
            if np.isfinite(front_u[i]):
                continue
            cand = tails[i]
            if k and bool(np.all(members[:k] <= cand, axis=1).any()):
                continue
            front_u[i] = front
            members[k, : m - 1] = cand
            k += 1
            ranked += int(counts[i])
    return front_u[inverse], front


def _t_ens(obj: np.ndarray, n_sort: int) -> tuple[np.ndarray, int]:
    """Tree-based efficient non-dominated sort.

    One tree per front.  Each node's children are indexed by the position,
    in that node's descending objective order, of the first objective where
    the child beats the node; a candidate only needs to be checked against
    subtrees whose branch index does not exceed its own first-win position.
    """
    uniq, inverse, counts = _sorted_unique(obj)
    nu, m = uniq.shape
    rows = uniq.tolist()
    # Column order (descending values) over objectives 2..M, per node.
    orders = (np.argsort(-uniq[:, 1:], axis=1, kind="stable") + 1).tolist()
    front_u = np.full(nu, UNRANKED)
    unranked = list(range(nu))
    target = min(n_sort, obj.shape[0])
    ranked = 0
    front = 0
    last_branch = m - 1
    while ranked < target:
        front += 1
        root = unranked[0]
        front_u[root] = front
        ranked += int(counts[root])
        children: dict[int, dict[int, int]] = {root: {}}
        still = []
        for p in unranked[1:]:
            prow = rows[p]
            dominated = False
            prune: dict[int, int] = {}
            stack = [root]
            while stack:
                q = stack.pop()
                qrow = rows[q]
                order = orders[q]
                k = 0
                while k < last_branch and prow[order[k]] >= qrow[order[k]]:
                    k += 1
                if k == last_branch:
                    dominated = True
                    break
                prune[q] = k
                for branch, child in children[q].items():
                    if branch <= k:
                        stack.append(child)
            if dominated:
                still.append(p)
                continue
            front_u[p] = front
            ranked += int(counts[p])
            node = root
            while True:
                branch = prune[node]
                nxt = children[node].get(branch)
                if nxt is None:
                    children[node][branch] = p
                    children[p] = {}
                    break
                node = nxt
        unranked = still
    return front_u[inverse], front
