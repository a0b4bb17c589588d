# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled bitmask kernels for masks of at most 63 bits.

Mirrors :mod:`lattice_ci._pykernels`; the selector in
:mod:`lattice_ci.kernels` routes wider masks to the Python versions.
"""
from libc.stdint cimport uint64_t
from libcpp.vector cimport vector
from libcpp.unordered_set cimport unordered_set
from libcpp.algorithm cimport sort as cpp_sort

from .errors import ResourceError


cdef inline int _pop(uint64_t x) nogil:
    return __builtin_popcountll(x)

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef bint _by_pop(uint64_t a, uint64_t b) nogil:
    cdef int pa = _pop(a), pb = _pop(b)
    if pa != pb:
        return pa < pb
    return a < b


def close_family(masks, Py_ssize_t cap):
    cdef unordered_set[uint64_t] family
    cdef vector[uint64_t] members
    cdef vector[uint64_t] work
    cdef uint64_t x, y, z
    cdef Py_ssize_t i, k, n
    family.insert(0)
    members.push_back(0)
    for m in masks:
        x = <uint64_t>m
        if family.count(x) == 0:
            family.insert(x)
            members.push_back(x)
    if <Py_ssize_t>members.size() > cap:
        raise ResourceError(f"lattice closure exceeded cap of {cap} elements")
    work = members
    while work.size() > 0:
        x = work.back()
        work.pop_back()
        n = members.size()
        for i in range(n):
            y = members[i]
            for k in range(2):
                z = (x | y) if k == 0 else (x & y)
                if family.count(z) == 0:
                    family.insert(z)
                    members.push_back(z)
                    work.push_back(z)
                    if <Py_ssize_t>members.size() > cap:
                        raise ResourceError(
                            f"lattice closure exceeded cap of {cap} elements"
                        )
    cpp_sort(members.begin(), members.end())
    return [members[i] for i in range(<Py_ssize_t>members.size())]


cdef vector[uint64_t] _minimize(vector[uint64_t]& xs):
    cdef vector[uint64_t] kept
    cdef uint64_t x, prev = 0
    cdef size_t i, j
    cdef bint dominated, first = True
    cpp_sort(xs.begin(), xs.end(), _by_pop)
    for i in range(xs.size()):
        x = xs[i]
        if not first and x == prev:
            continue
        first = False
        prev = x
        dominated = False
        for j in range(kept.size()):
            if kept[j] & x == kept[j]:
                dominated = True
                break
        if not dominated:
            kept.push_back(x)
    return kept


def minimize(masks):
    cdef vector[uint64_t] xs
    for m in masks:
        xs.push_back(<uint64_t>m)
    cdef vector[uint64_t] kept = _minimize(xs)
    return [kept[i] for i in range(kept.size())]


def transversals(edges, Py_ssize_t cap):
    cdef vector[uint64_t] es
    cdef vector[uint64_t] current
    cdef vector[uint64_t] nxt
    cdef uint64_t e, t, bits, low
    cdef size_t i, k
    for m in edges:
        es.push_back(<uint64_t>m)
    es = _minimize(es)
    current.push_back(0)
    for k in range(es.size()):
        e = es[k]
        nxt.clear()
        for i in range(current.size()):
            t = current[i]
            if t & e:
                nxt.push_back(t)
                continue
            bits = e
            while bits:
                low = bits & (~bits + 1)
                nxt.push_back(t | low)
                bits ^= low
        current = _minimize(nxt)
        if <Py_ssize_t>current.size() > cap:
            raise ResourceError(f"transversal count exceeded cap of {cap}")
    return [current[i] for i in range(current.size())]


def pairwise_or_min(a, b, Py_ssize_t cap):
    cdef vector[uint64_t] va, vb, out
    cdef size_t i, j
    for m in a:
        va.push_back(<uint64_t>m)
    for m in b:
        vb.push_back(<uint64_t>m)
    for i in range(va.size()):
        for j in range(vb.size()):
            out.push_back(va[i] | vb[j])
    out = _minimize(out)
    if <Py_ssize_t>out.size() > cap:
        raise ResourceError(f"generator count exceeded cap of {cap}")
    return [out[i] for i in range(out.size())]


def order_ideals(below, Py_ssize_t cap):
    cdef vector[uint64_t] down
    cdef vector[uint64_t] out
    cdef vector[uint64_t] stack_mask
    cdef vector[int] stack_k
    cdef int n, k
    cdef uint64_t mask
    for m in below:
        down.push_back(<uint64_t>m)
    n = down.size()
    stack_k.push_back(0)
    stack_mask.push_back(0)
    while stack_k.size() > 0:
        k = stack_k.back()
        mask = stack_mask.back()
        stack_k.pop_back()
        stack_mask.pop_back()
        if k == n:
            out.push_back(mask)
            if <Py_ssize_t>out.size() > cap:
                raise ResourceError(f"order-ideal count exceeded cap of {cap}")
            continue
        stack_k.push_back(k + 1)
        stack_mask.push_back(mask)
        if down[k] & mask == down[k]:
            stack_k.push_back(k + 1)
            stack_mask.push_back(mask | ((<uint64_t>1) << k))
    cpp_sort(out.begin(), out.end())
    return [out[i] for i in range(out.size())]


def cover_pairs(masks):
    cdef vector[uint64_t] xs
    cdef vector[size_t] ups
    cdef size_t i, j, u, n
    cdef uint64_t x, y
    cdef bint blocked
    for m in masks:
        xs.push_back(<uint64_t>m)
    n = xs.size()
    pairs = []
    for i in range(n):
        x = xs[i]
        ups.clear()
        for j in range(i + 1, n):
            y = xs[j]
            if y != x and x & y == x:
                blocked = False
                for u in range(ups.size()):
                    if xs[ups[u]] & y == xs[ups[u]]:
                        blocked = True
                        break
                if not blocked:
                    ups.push_back(j)
        for u in range(ups.size()):
            pairs.append((i, ups[u]))
    return pairs
