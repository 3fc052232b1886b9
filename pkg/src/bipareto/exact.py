"""Exact Pareto front via a layered dynamic program.

Jobs are added one at a time in the instance's sorted order.  Layer ``i``
holds one state per feasible (most-loaded-machine flag, lateness, load)
triple reachable with the first ``i`` jobs, after keeping only the best
lateness per (flag, load) pair.  Both children of a state are generated:
put job ``i`` on the most-loaded machine, or on the other one (which may
or may not overtake the load lead).  The first job is pinned to machine
flag 1, halving the search space at no cost since machines are identical.

The module exposes scalar reference operations (`initial_layer`,
`successors`, `prune`) that define the transition semantics on `DpState`
objects, plus `solve_exact`, which runs the same recurrence vectorized
over numpy arrays.  The two are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .model import (
    DpState,
    Front,
    Instance,
    ParetoPoint,
    Schedule,
    build_schedule,
    pareto_filter,
)

CHOICE_SAME = 0
CHOICE_OTHER = 1

# Live retained states across all layers (parent chains keep them alive).
DEFAULT_STATE_BUDGET = 50_000_000


class StateBudgetError(RuntimeError):
    """Raised when a solve would retain more states than allowed."""


@dataclass(frozen=True)
class Layer:
    """States kept after processing the first ``i`` jobs."""

    i: int
    states: tuple[DpState, ...]


@dataclass(frozen=True)
class SolveResult:
    """A Pareto front plus one realizing schedule per front point.

    ``schedules[j]`` evaluates exactly to ``front.points[j]``.
    ``layer_sizes[i-1]`` is the retained state count of layer ``i``;
    ``layers`` carries the full state sets only when the solver ran with
    ``keep_layers=True`` (instrumentation mode, meant for small instances).
    """

    front: Front
    schedules: tuple[Schedule, ...]
    layer_sizes: tuple[int, ...]
    layers: Optional[tuple[Layer, ...]] = None


def initial_layer(inst: Instance) -> Layer:
    """Layer 1: the first sorted job alone on machine flag 1."""
    first = inst.jobs[0]
    root = DpState(k=1, lmax=first.p + first.q, cmax=first.p)
    return Layer(1, (root,))


def successors(state: DpState, p: int, q: int, prefix_total: int) -> tuple[DpState, DpState]:
    """Both children of ``state`` when adding a job (p, q).

    ``prefix_total`` is the processing-time sum through the added job.
    The first child keeps the job on the most-loaded machine; the second
    puts it on the other machine, whose new load ``prefix_total - cmax``
    is also the job's completion time, and takes over the most-loaded
    flag only if it overtakes strictly.
    """
    same = DpState(
        k=state.k,
        lmax=max(state.lmax, state.cmax + p + q),
        cmax=state.cmax + p,
        parent=state,
        choice=CHOICE_SAME,
    )
    other_load = prefix_total - state.cmax
    if state.cmax >= other_load:
        other = DpState(
            k=state.k,
            lmax=max(state.lmax, other_load + q),
            cmax=state.cmax,
            parent=state,
            choice=CHOICE_OTHER,
        )
    else:
        other = DpState(
            k=1 - state.k,
            lmax=max(state.lmax, other_load + q),
            cmax=other_load,
            parent=state,
            choice=CHOICE_OTHER,
        )
    return same, other


def _chain_depth(state: DpState) -> int:
    depth = 1
    while state.parent is not None:
        state = state.parent
        depth += 1
    return depth


def prune(states: Sequence[DpState]) -> Layer:
    """Keep one minimal-lateness state per (flag, load) pair.

    Ties on lateness keep the earliest-generated state (input order).  The
    layer index is inferred from the parent-chain depth of the states.
    """
    if not states:
        raise ValueError("prune requires at least one state")
    best: dict[tuple[int, int], tuple[int, DpState]] = {}
    for pos, state in enumerate(states):
        key = (state.k, state.cmax)
        cur = best.get(key)
        if cur is None or state.lmax < cur[1].lmax:
            best[key] = (pos, state)
    kept = tuple(state for _, state in sorted(best.values()))
    return Layer(_chain_depth(kept[0]), kept)


# ---------------------------------------------------------------------------
# Vectorized layer engine (shared with the trimming solver in fptas.py)
# ---------------------------------------------------------------------------


@dataclass
class _ArrayLayer:
    """One layer as parallel arrays, in generation order."""

    k: np.ndarray       # int8, most-loaded machine flag
    lmax: np.ndarray    # int64
    cmax: np.ndarray    # int64
    parent: np.ndarray  # int64 index into the previous layer, -1 at layer 1
    choice: np.ndarray  # int8, CHOICE_SAME / CHOICE_OTHER, -1 at layer 1

    def __len__(self) -> int:
        return len(self.cmax)


@dataclass
class _Successors:
    """All children of one layer, with per-child generation ranks.

    Child 2j is the same-machine child of parent j, child 2j+1 the
    other-machine child, mirroring the scalar generation order.
    """

    k: np.ndarray
    lmax: np.ndarray
    cmax: np.ndarray
    parent: np.ndarray
    choice: np.ndarray
    gen: np.ndarray


# A reducer collapses a layer's successor pool to the retained states,
# returning the winning indices into the pool in generation order.
_Reducer = Callable[[_Successors], np.ndarray]


def _initial_arrays(inst: Instance) -> _ArrayLayer:
    first = inst.jobs[0]
    return _ArrayLayer(
        k=np.array([1], dtype=np.int8),
        lmax=np.array([first.p + first.q], dtype=np.int64),
        cmax=np.array([first.p], dtype=np.int64),
        parent=np.array([-1], dtype=np.int64),
        choice=np.array([-1], dtype=np.int8),
    )


def _expand(layer: _ArrayLayer, p: int, q: int, prefix_total: int) -> _Successors:
    m = len(layer)
    idx = np.arange(m, dtype=np.int64)

    same_lmax = np.maximum(layer.lmax, layer.cmax + (p + q))
    same_cmax = layer.cmax + p

    other_load = prefix_total - layer.cmax
    stays = layer.cmax >= other_load
    other_lmax = np.maximum(layer.lmax, other_load + q)
    other_cmax = np.where(stays, layer.cmax, other_load)
    other_k = np.where(stays, layer.k, 1 - layer.k).astype(np.int8)

    return _Successors(
        k=np.concatenate([layer.k, other_k]),
        lmax=np.concatenate([same_lmax, other_lmax]),
        cmax=np.concatenate([same_cmax, other_cmax]),
        parent=np.concatenate([idx, idx]),
        choice=np.concatenate(
            [
                np.full(m, CHOICE_SAME, dtype=np.int8),
                np.full(m, CHOICE_OTHER, dtype=np.int8),
            ]
        ),
        gen=np.concatenate([2 * idx, 2 * idx + 1]),
    )


def _first_per_group(key: np.ndarray, order: np.ndarray) -> np.ndarray:
    """Indices of the first element of each equal-key run, given sort order."""
    sorted_key = key[order]
    is_first = np.empty(len(order), dtype=bool)
    is_first[0] = True
    np.not_equal(sorted_key[1:], sorted_key[:-1], out=is_first[1:])
    return order[is_first]


def _take(pool: _Successors, winners: np.ndarray) -> _ArrayLayer:
    # Restore generation order so "earliest generated" is simply the
    # smallest array index in every layer.
    winners = winners[np.argsort(pool.gen[winners])]
    return _ArrayLayer(
        k=pool.k[winners],
        lmax=pool.lmax[winners],
        cmax=pool.cmax[winners],
        parent=pool.parent[winners],
        choice=pool.choice[winners],
    )


def _prune_reducer(pool: _Successors) -> np.ndarray:
    # One winner per (k, cmax): smallest lmax, then earliest generated.
    key = pool.cmax * 2 + pool.k
    order = np.lexsort((pool.gen, pool.lmax, key))
    return _first_per_group(key, order)


def _materialize_layer(arrays: _ArrayLayer, i: int, prev_states: Optional[tuple[DpState, ...]]) -> Layer:
    states = []
    for j in range(len(arrays)):
        parent_idx = int(arrays.parent[j])
        states.append(
            DpState(
                k=int(arrays.k[j]),
                lmax=int(arrays.lmax[j]),
                cmax=int(arrays.cmax[j]),
                parent=None if parent_idx < 0 or prev_states is None else prev_states[parent_idx],
                choice=None if parent_idx < 0 else int(arrays.choice[j]),
            )
        )
    return Layer(i, tuple(states))


def _replay_choices(inst: Instance, choices: Sequence[int]) -> tuple[int, ...]:
    """Turn a per-job choice chain into absolute machine flags.

    ``choices[i-2]`` says whether sorted job ``i`` went onto the currently
    most-loaded machine or the other one; replaying the loads forward
    resolves those relative choices into flags, with job 1 on flag 1.
    """
    loads = [0, 0]
    loads[1] = inst.jobs[0].p
    current_k = 1
    flags = [1]
    for i, choice in enumerate(choices, start=2):
        p = inst.jobs[i - 1].p
        if choice == CHOICE_SAME:
            flags.append(current_k)
            loads[current_k] += p
        else:
            target = 1 - current_k
            flags.append(target)
            new_load = loads[target] + p
            if loads[current_k] < new_load:
                current_k = target
            loads[target] = new_load
    return tuple(flags)


def reconstruct(final_state: DpState, inst: Instance) -> Schedule:
    """Decode a final state's parent chain into a full Schedule."""
    choices: list[int] = []
    state: Optional[DpState] = final_state
    while state is not None and state.choice is not None:
        choices.append(state.choice)
        state = state.parent
    if state is None:
        raise RuntimeError("broken parent chain: no root state")
    choices.reverse()
    if len(choices) != inst.n - 1:
        raise RuntimeError(
            f"broken parent chain: {len(choices) + 1} states for {inst.n} jobs"
        )
    return build_schedule(inst, _replay_choices(inst, choices))


def _pareto_of_final(arrays: _ArrayLayer) -> tuple[list[ParetoPoint], list[int]]:
    """Non-dominated (cmax, lmax) points of the final layer.

    Returns the points sorted by increasing cmax and, per point, the index
    of its earliest-generated witness state.
    """
    m = len(arrays)
    order = np.lexsort((np.arange(m), arrays.lmax, arrays.cmax))
    points: list[ParetoPoint] = []
    witnesses: list[int] = []
    best_lmax: Optional[int] = None
    last_cmax: Optional[int] = None
    for j in order:
        c = int(arrays.cmax[j])
        l = int(arrays.lmax[j])
        if c == last_cmax:
            continue  # larger or equal lmax for the same cmax
        if best_lmax is None or l < best_lmax:
            points.append(ParetoPoint(c, l))
            witnesses.append(int(j))
            best_lmax = l
        last_cmax = c
    return points, witnesses


def _solve_layered(
    inst: Instance,
    make_reducer: Callable[[], _Reducer],
    budget: int,
    keep_layers: bool,
) -> SolveResult:
    """Shared layer loop: expand, reduce, track parents, reconstruct."""
    if budget < 1:
        raise ValueError("state budget must be positive")
    reducer = make_reducer()

    current = _initial_arrays(inst)
    chain: list[tuple[np.ndarray, np.ndarray]] = [(current.parent, current.choice)]
    layer_sizes = [1]
    retained = 1

    kept_layers: Optional[list[Layer]] = None
    if keep_layers:
        kept_layers = [_materialize_layer(current, 1, None)]

    for i in range(2, inst.n + 1):
        if retained + 2 * len(current) > budget:
            raise StateBudgetError(
                f"state budget exceeded: layer {i} needs up to "
                f"{retained + 2 * len(current)} live states (budget {budget})"
            )
        job = inst.jobs[i - 1]
        pool = _expand(current, job.p, job.q, inst.prefix[i])
        current = _take(pool, reducer(pool))
        chain.append((current.parent, current.choice))
        layer_sizes.append(len(current))
        retained += len(current)
        if kept_layers is not None:
            kept_layers.append(_materialize_layer(current, i, kept_layers[-1].states))

    points, witnesses = _pareto_of_final(current)
    schedules = []
    for w in witnesses:
        choices: list[int] = []
        idx = w
        for layer_idx in range(inst.n - 1, 0, -1):
            parents, picks = chain[layer_idx]
            choices.append(int(picks[idx]))
            idx = int(parents[idx])
        choices.reverse()
        schedules.append(build_schedule(inst, _replay_choices(inst, choices)))

    return SolveResult(
        front=pareto_filter(points),
        schedules=tuple(schedules),
        layer_sizes=tuple(layer_sizes),
        layers=tuple(kept_layers) if kept_layers is not None else None,
    )


def solve_exact(
    inst: Instance,
    *,
    budget: int = DEFAULT_STATE_BUDGET,
    keep_layers: bool = False,
) -> SolveResult:
    """Exact Pareto front of (makespan, maximum lateness).

    Runs the layered recurrence with per-(flag, load) pruning and returns
    every non-dominated objective pair together with a schedule realizing
    it.  Raises StateBudgetError instead of exhausting memory when the
    retained state count would exceed ``budget``.
    """
    return _solve_layered(inst, lambda: _prune_reducer, budget, keep_layers)
