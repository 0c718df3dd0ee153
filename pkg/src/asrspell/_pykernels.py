"""Pure-Python reference implementation of the ranking kernel.

Used when the compiled extension is unavailable (or when
ASRSPELL_PURE_PYTHON=1 forces it). Must stay behaviorally identical to
``asrspell._native``; the test suite checks the two against each other.
"""
import heapq


def rank_shared_candidates(postings, uni_counts, n_vocab, exclude_id, k):
    """Rank vocabulary words by how many postings lists they appear in.

    ``postings`` holds one array of word ids per distinct character bigram
    of the error word, so a word's accumulation total equals the number of
    distinct bigrams it shares with the error. Returns at most ``k``
    ``(word_id, shared)`` pairs ordered by shared count descending, then
    corpus frequency descending, then word id ascending.
    """
    shared: dict[int, int] = {}
    for arr in postings:
        ids = arr.tolist() if hasattr(arr, "tolist") else arr
        for wid in ids:
            shared[wid] = shared.get(wid, 0) + 1
    if exclude_id >= 0:
        shared.pop(exclude_id, None)
    if not shared:
        return []
    # The three-part key is a total order (ids are unique), so nsmallest is
    # deterministic and agrees with a full sort.
    best = heapq.nsmallest(
        k, shared.items(),
        key=lambda item: (-item[1], -int(uni_counts[item[0]]), item[0]),
    )
    return [(int(wid), int(count)) for wid, count in best]
