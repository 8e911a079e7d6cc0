#
# workers.py
# Ordered parallel map over independent jobs.  Results always come back in
# input order so reports do not depend on scheduling.
#

from concurrent.futures import ThreadPoolExecutor

from . import params


def parallelMap(func, items, threads=None):
    items = list(items)
    if threads is None:
        threads = params.threadCount()
    if threads <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(func, items))
