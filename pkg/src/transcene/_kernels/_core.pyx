# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel backend; semantics mirror _core_py exactly."""

import numpy as np

cdef enum:
    C_OK = 0
    C_NOT_FOUND = 1
    C_NO_OP = 2
    C_OUT_OF_PLANE = 3
    C_OVERLAP = 4
    C_BLOCKED = 0
    C_INSIDE = 1
    C_OUT = 2
    C_IN = 3
    C_HIDDEN = 4

STATUS_OK = C_OK
STATUS_NOT_FOUND = C_NOT_FOUND
STATUS_NO_OP = C_NO_OP
STATUS_OUT_OF_PLANE = C_OUT_OF_PLANE
STATUS_OVERLAP = C_OVERLAP

MOVE_BLOCKED = C_BLOCKED
MOVE_INSIDE = C_INSIDE
MOVE_OUT = C_OUT
MOVE_IN = C_IN
MOVE_HIDDEN = C_HIDDEN

cdef int[8] DX = [0, 1, 1, 1, 0, -1, -1, -1]
cdef int[8] DY = [1, 1, 0, -1, -1, -1, 0, 1]


cdef inline int c_abs(int v) nogil:
    return -v if v < 0 else v


cdef int _apply_one(int[:, ::1] rows, int n, int obj, int value, bint strict,
                    double[::1] radii, int plane_bound, int step_unit) nogil:
    cdef int attr, val, m, d, step, nx, ny, j, ox, oy
    cdef double r, limit
    if obj < 0 or obj >= n:
        return C_NOT_FOUND
    if value < 17:
        if value < 3:
            attr = 0; val = value
        elif value < 11:
            attr = 1; val = value - 3
        elif value < 14:
            attr = 2; val = value - 11
        else:
            attr = 3; val = value - 14
        if strict and rows[obj, attr] == val:
            return C_NO_OP
        rows[obj, attr] = val
        return C_OK
    m = value - 17
    d = m >> 1
    step = (m & 1) + 1
    nx = rows[obj, 4] + DX[d] * step * step_unit
    ny = rows[obj, 5] + DY[d] * step * step_unit
    if strict:
        if c_abs(nx) > plane_bound or c_abs(ny) > plane_bound:
            return C_OUT_OF_PLANE
        r = radii[rows[obj, 0]]
        for j in range(n):
            if j == obj:
                continue
            ox = nx - rows[j, 4]
            oy = ny - rows[j, 5]
            limit = r + radii[rows[j, 0]]
            if ox * ox + oy * oy < limit * limit:
                return C_OVERLAP
    rows[obj, 4] = nx
    rows[obj, 5] = ny
    return C_OK


def apply_steps(int[:, ::1] state, int[:, ::1] steps, bint strict,
                double[::1] radii, int plane_bound, int step_unit,
                int[::1] statuses):
    """Apply steps in order, mutating `state`; failed steps are skipped."""
    cdef int n = state.shape[0]
    cdef int m = steps.shape[0]
    cdef int i, code, failures = 0
    for i in range(m):
        code = _apply_one(state, n, steps[i, 0], steps[i, 1], strict,
                          radii, plane_bound, step_unit)
        statuses[i] = code
        if code != C_OK:
            failures += 1
    return failures


def scene_distance(int[:, ::1] a, int[:, ::1] b, int visible_bound):
    cdef int n = a.shape[0]
    cdef int i, d = 0
    cdef bint va, vb
    for i in range(n):
        va = c_abs(a[i, 4]) <= visible_bound and c_abs(a[i, 5]) <= visible_bound
        vb = c_abs(b[i, 4]) <= visible_bound and c_abs(b[i, 5]) <= visible_bound
        if not va and not vb:
            continue
        if va != vb:
            d += 1
        elif a[i, 4] != b[i, 4] or a[i, 5] != b[i, 5]:
            d += 1
        if a[i, 0] != b[i, 0]:
            d += 1
        if a[i, 1] != b[i, 1]:
            d += 1
        if a[i, 2] != b[i, 2]:
            d += 1
        if a[i, 3] != b[i, 3]:
            d += 1
    return d


cdef bint _collision_at(int[:, ::1] state, int count, int skip, int x, int y,
                        double radius, double[::1] radii) nogil:
    cdef int j, dx, dy
    cdef double limit
    for j in range(count):
        if j == skip:
            continue
        dx = x - state[j, 4]
        dy = y - state[j, 5]
        limit = radius + radii[state[j, 0]]
        if dx * dx + dy * dy < limit * limit:
            return True
    return False


def collision_at(int[:, ::1] state, int count, int skip, int x, int y,
                 double radius, double[::1] radii):
    return bool(_collision_at(state, count, skip, x, y, radius, radii))


def order_sensitive(int[:, ::1] state, int[:, ::1] steps,
                    double[::1] radii, int plane_bound, int step_unit):
    """True iff some permutation of the steps has a failed step under strict application."""
    cdef int n = state.shape[0]
    cdef int m = steps.shape[0]
    if m <= 1:
        return False
    if m > 8:
        raise ValueError("permutation budget is 8 steps")
    scratch_arr = np.empty((n, 6), dtype=np.int32)
    cdef int[:, ::1] scratch = scratch_arr
    cdef int idx[8]
    cdef int c[8]
    cdef int i, k, tmp, code
    cdef bint failed
    for i in range(m):
        idx[i] = i
        c[i] = 0
    # Heap's algorithm over step indices; bail out on first failing permutation.
    if _try_order(state, scratch, steps, idx, m, radii, plane_bound, step_unit):
        return True
    i = 0
    while i < m:
        if c[i] < i:
            if i % 2 == 0:
                tmp = idx[0]; idx[0] = idx[i]; idx[i] = tmp
            else:
                tmp = idx[c[i]]; idx[c[i]] = idx[i]; idx[i] = tmp
            if _try_order(state, scratch, steps, idx, m, radii, plane_bound, step_unit):
                return True
            c[i] += 1
            i = 0
        else:
            c[i] = 0
            i += 1
    return False


cdef bint _try_order(int[:, ::1] state, int[:, ::1] scratch, int[:, ::1] steps,
                     int* idx, int m, double[::1] radii, int plane_bound,
                     int step_unit) nogil:
    """Apply steps in idx order on a scratch copy; True iff any step fails."""
    cdef int n = state.shape[0]
    cdef int i, j, k
    for i in range(n):
        for j in range(6):
            scratch[i, j] = state[i, j]
    for k in range(m):
        i = idx[k]
        if _apply_one(scratch, n, steps[i, 0], steps[i, 1], True,
                      radii, plane_bound, step_unit) != C_OK:
            return True
    return False


def move_class(int[:, ::1] state, int obj, int value, double[::1] radii,
               int plane_bound, int visible_bound, int step_unit):
    """Classify a move value for one object without applying it."""
    cdef int m = value - 17
    cdef int d = m >> 1
    cdef int step = (m & 1) + 1
    cdef int x = state[obj, 4]
    cdef int y = state[obj, 5]
    cdef int nx = x + DX[d] * step * step_unit
    cdef int ny = y + DY[d] * step * step_unit
    cdef bint before, after
    if c_abs(nx) > plane_bound or c_abs(ny) > plane_bound:
        return C_BLOCKED
    if _collision_at(state, state.shape[0], obj, nx, ny, radii[state[obj, 0]], radii):
        return C_BLOCKED
    before = c_abs(x) <= visible_bound and c_abs(y) <= visible_bound
    after = c_abs(nx) <= visible_bound and c_abs(ny) <= visible_bound
    if before and after:
        return C_INSIDE
    if before:
        return C_OUT
    if after:
        return C_IN
    return C_HIDDEN
