"""Vectorised evaluation of fairness notions over blocks of the orientation space.

All values are scaled by one common positive integer so that every value and
every proportional share becomes an integer; comparisons are then exact.
Arrays use int64 when the scaled magnitudes leave headroom and fall back to
Python integers (object dtype) otherwise.
"""
from __future__ import annotations

import math
from collections.abc import Mapping
from fractions import Fraction

import numpy as np

from .fairness import Notion, prop_share, sprop1_threshold
from .model import Instance

_INT64_HEADROOM = 2**60


class BatchEvaluator:
    """Row-wise notion tests for owner matrices (rows = orientations)."""

    def __init__(self, instance: Instance, mms: Mapping[int, Fraction] | None = None):
        self.instance = instance
        n, m = instance.n, instance.m
        self.radices = np.array([it.n_e for it in instance.items], dtype=np.int64)
        width = max((it.n_e for it in instance.items), default=1)
        self.table = np.zeros((m, width), dtype=np.int64)
        for k, it in enumerate(instance.items):
            self.table[k, : it.n_e] = [a - 1 for a in it.relevant]

        den = 1
        for it in instance.items:
            for v in it.values.values():
                den = math.lcm(den, v.denominator)
            den = math.lcm(den, it.n_e)
        scale = 2 * den  # the SPROP1 threshold halves a sum of values
        extras = [prop_share(instance).values()]
        if instance.is_goods():
            extras.append(sprop1_threshold(instance).values())
        if mms is not None:
            extras.append(mms.values())
        for group in extras:
            for q in group:
                scale = math.lcm(scale, q.denominator)
        self.scale = scale

        bound = sum(max((abs(v) for v in it.values.values()), default=0) for it in instance.items) * scale
        self.dtype = np.int64 if bound * 4 < _INT64_HEADROOM else object
        W = np.zeros((n, m), dtype=self.dtype)
        self.relevant = np.zeros((n, m), dtype=bool)
        for k, it in enumerate(instance.items):
            for a in it.relevant:
                W[a - 1, k] = int(it.value(a) * scale)
                self.relevant[a - 1, k] = True
        self.W = W
        self.big = int(bound + 1)
        self.prop = self._scaled(prop_share(instance))
        self.sprop1 = self._scaled(sprop1_threshold(instance)) if instance.is_goods() else None
        self.mms = self._scaled(mms) if mms is not None else None

    def _scaled(self, shares: Mapping[int, Fraction]) -> np.ndarray:
        return np.array([int(shares[i] * self.scale) for i in self.instance.agents], dtype=self.dtype)

    # ------------------------------------------------------------ decoding

    def owners(self, start: int, stop: int) -> np.ndarray:
        """Owner matrix (0-based agents) for indices [start, stop), item 0 most significant."""
        idx = np.arange(start, stop, dtype=np.int64)
        m = self.instance.m
        digits = np.empty((stop - start, m), dtype=np.int64)
        for k in range(m - 1, -1, -1):
            idx, digits[:, k] = np.divmod(idx, self.radices[k])
        return self.table[np.arange(m), digits]

    # ------------------------------------------------------------ statistics

    def _owned(self, O: np.ndarray) -> np.ndarray:
        """Boolean (n, B, m): owned[i, b, k] iff agent i owns item k in row b."""
        return O[None, :, :] == np.arange(self.instance.n)[:, None, None]

    def values(self, O: np.ndarray, owned: np.ndarray | None = None) -> np.ndarray:
        owned = self._owned(O) if owned is None else owned
        return (owned * self.W[:, None, :]).sum(axis=2)

    def _masked_extreme(self, mask, vals, fn, fill):
        arr = np.where(mask, vals, fill)
        return fn(arr, axis=2) if arr.shape[2] else np.full(arr.shape[:2], fill, dtype=self.dtype)

    # ------------------------------------------------------------ notions

    def holds(self, notion: Notion, O: np.ndarray) -> np.ndarray:
        """Boolean per row: every agent is satisfied."""
        return self.agent_ok(notion, O).all(axis=0)

    def agent_ok(self, notion: Notion, O: np.ndarray) -> np.ndarray:
        """Boolean (n, B): agent i meets the notion in row b (against every other agent
        for the pairwise notions)."""
        notion = Notion(notion)
        owned = self._owned(O)
        val = self.values(O, owned)
        W = self.W[:, None, :]
        rel = self.relevant[:, None, :]
        big = self.big
        if notion is Notion.PROP:
            return val >= self.prop[:, None]
        if notion is Notion.PROP1:
            gain = self._masked_extreme(rel, np.where(owned, -W, W), np.max, -big)
            return (val >= self.prop[:, None]) | (val + gain >= self.prop[:, None])
        if notion is Notion.PROPX:
            unowned = rel & ~owned
            add = self._masked_extreme(unowned & (W >= 0), W, np.min, big)
            rem = self._masked_extreme(owned & (W <= 0), -W, np.min, big)
            P = self.prop[:, None]
            return (val >= P) | ((val + add >= P) & (val + rem >= P))
        if notion is Notion.SPROP1:
            if self.sprop1 is None:
                from .fairness import SPROP1OnNonGoods

                raise SPROP1OnNonGoods("SPROP1 is defined for goods-instances only")
            return val >= self.sprop1[:, None]
        if notion is Notion.MMS:
            if self.mms is None:
                raise ValueError("MMS evaluation needs precomputed shares")
            return val >= self.mms[:, None]
        if notion is Notion.EQ:
            return np.broadcast_to((val == val[:1]).all(axis=0), val.shape)
        if notion in (Notion.EQ1, Notion.EQX):
            diff = val[None, :, :] - val[:, None, :]  # [i, j] = v_j - v_i
            if notion is Notion.EQ1:
                top = self._masked_extreme(owned, W, np.max, -big)     # best item to drop from j
                low = -self._masked_extreme(owned, W, np.min, big)     # best item to drop from i
                slack = np.maximum(top[None, :, :], low[:, None, :])
            else:
                minpos = self._masked_extreme(owned & (W > 0), W, np.min, big)
                maxneg = -self._masked_extreme(owned & (W < 0), W, np.max, -big)
                slack = np.minimum(minpos[None, :, :], maxneg[:, None, :])
            ok = (diff <= 0) | (diff <= slack)
            return ok.all(axis=1)
        if notion in (Notion.EF, Notion.EF1):
            # V[i, j, b] = v_i(bundle of j)
            V = np.einsum("jbk,ik->ijb", owned.astype(self.dtype), self.W) if self.dtype is not object else \
                (owned[None, :, :, :] * self.W[:, None, None, :]).sum(axis=3)
            own = np.diagonal(V, axis1=0, axis2=1).T  # (n, B)
            envy = V - own[:, None, :]
            if notion is Notion.EF:
                return (envy <= 0).all(axis=1)
            # drop from j's bundle: every owned item of j counts, irrelevant ones at 0
            Wi = self.W[:, None, None, :]
            drop_j = np.where(owned[None, :, :, :], Wi, -big).max(axis=3) if O.shape[1] else \
                np.full(envy.shape, -big)
            drop_i = -self._masked_extreme(owned, W, np.min, big)
            slack = np.maximum(drop_j, drop_i[:, None, :])
            ok = (envy <= 0) | (envy <= slack)
            return ok.all(axis=1)
        raise ValueError(f"unsupported notion {notion}")
