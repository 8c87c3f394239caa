# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the hot scan loops (see `_kernels_py` for contracts)."""

BACKEND = "cython"


def group_schema_keys(vertices, dict out_labels, dict vertex_labels, bint want_attrs, bint want_classes):
    cdef dict groups = {}
    cdef object v, labels, attrs, classes, key, bucket
    cdef tuple empty = ()
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
            (<list>bucket).append(v)
    return groups


def find_conflicts(dict scan_index, dict other_index):
    cdef list out = []
    cdef object m, cid, other
    for m, cid in scan_index.items():
        other = other_index.get(m)
        if other is not None and other != cid:
            out.append((m, cid, other))
    return out


def classify_members(dict s1_index, dict s2_index, dict s2_eqcs):
    cdef Py_ssize_t case1 = 0, case2 = 0, case3 = 0
    cdef object m, cid, other
    for m, cid in s1_index.items():
        other = s2_index.get(m)
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
