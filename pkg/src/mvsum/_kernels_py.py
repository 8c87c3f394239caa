"""Pure-Python kernels for the hot scan loops.

Same contracts as the compiled twin in `_kernels.pyx`; selection happens in
`_dispatch`. Keep the two implementations in lockstep (tests enforce parity).
"""

from __future__ import annotations

BACKEND = "python"


def group_schema_keys(vertices, out_labels, vertex_labels, want_attrs, want_classes):
    """Group vertices by their raw schema key.

    The key is (attributes, classes) as sorted tuples, with the side a model
    does not use set to None. Returns {key: [vertex, ...]}.
    """
    groups = {}
    empty = ()
    for v in vertices:
        if want_attrs:
            labels = out_labels.get(v)
            attrs = tuple(sorted(labels)) if labels else empty
        else:
            attrs = None
        if want_classes:
            labels = vertex_labels.get(v)
            classes = tuple(sorted(labels)) if labels else empty
        else:
            classes = None
        key = (attrs, classes)
        bucket = groups.get(key)
        if bucket is None:
            groups[key] = [v]
        else:
            bucket.append(v)
    return groups


def find_conflicts(scan_index, other_index):
    """Members present in both indexes but mapped to different EQC ids.

    Returns [(member, id_in_scan, id_in_other), ...] in scan order.
    """
    get = other_index.get
    out = []
    for m, cid in scan_index.items():
        other = get(m)
        if other is not None and other != cid:
            out.append((m, cid, other))
    return out


def classify_members(s1_index, s2_index, s2_eqcs):
    """Case-1/2/3 counts for every member of S1, from S1's perspective."""
    get = s2_index.get
    case1 = case2 = case3 = 0
    for m, cid in s1_index.items():
        other = get(m)
        if other is None:
            if cid in s2_eqcs:
                case2 += 1
            else:
                case1 += 1
        elif other == cid:
            case1 += 1
        else:
            case3 += 1
    return case1, case2, case3
