# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled ranking kernel: shared-bigram accumulation over postings lists.

Same contract as asrspell._pykernels.rank_shared_candidates; the hot part
(accumulating every postings entry into a per-word counter) runs as plain
C loops over int32 memoryviews.
"""
import numpy as np


def rank_shared_candidates(postings, uni_counts, Py_ssize_t n_vocab,
                           Py_ssize_t exclude_id, Py_ssize_t k):
    cdef Py_ssize_t total = 0
    for obj in postings:
        total += len(obj)
    if total == 0 or n_vocab == 0:
        return []

    scratch_arr = np.zeros(n_vocab, dtype=np.intc)
    touched_arr = np.empty(total, dtype=np.intc)
    cdef int[:] scratch = scratch_arr
    cdef int[:] touched = touched_arr
    cdef const int[:] arr
    cdef Py_ssize_t i, n, n_touched = 0
    cdef int wid

    for obj in postings:
        arr = obj
        n = arr.shape[0]
        for i in range(n):
            wid = arr[i]
            if scratch[wid] == 0:
                touched[n_touched] = wid
                n_touched += 1
            scratch[wid] += 1

    if 0 <= exclude_id < n_vocab:
        scratch[exclude_id] = 0

    ids_arr = np.empty(n_touched, dtype=np.intc)
    shared_arr = np.empty(n_touched, dtype=np.intc)
    cdef int[:] ids = ids_arr
    cdef int[:] shared = shared_arr
    cdef Py_ssize_t n_cand = 0
    for i in range(n_touched):
        wid = touched[i]
        if scratch[wid] > 0:
            ids[n_cand] = wid
            shared[n_cand] = scratch[wid]
            n_cand += 1
    if n_cand == 0:
        return []

    ids_arr = ids_arr[:n_cand]
    shared_arr = shared_arr[:n_cand]
    counts = np.asarray(uni_counts, dtype=np.int64)
    # lexsort keys are applied last-first: shared desc, corpus count desc,
    # word id asc -- identical to the pure-Python ordering.
    order = np.lexsort((ids_arr, -counts[ids_arr], -shared_arr))
    if k < order.shape[0]:
        order = order[:k]
    return [(int(ids_arr[j]), int(shared_arr[j])) for j in order]
