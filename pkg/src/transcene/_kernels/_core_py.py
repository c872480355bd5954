"""Pure-Python kernel backend.

Semantics must match `_core.pyx` exactly; `tests/test_kernels.py` fuzzes both
backends against each other. Scenes are int32 (n, 6) arrays with columns
size, color, shape, material, x, y; steps are int32 (m, 2) arrays of
(object_id, value_index) with the canonical 33-value indexing.
"""

from itertools import permutations

STATUS_OK = 0
STATUS_NOT_FOUND = 1
STATUS_NO_OP = 2
STATUS_OUT_OF_PLANE = 3
STATUS_OVERLAP = 4

# Move classes returned by move_class (geometry only; policy lives in the sampler).
MOVE_BLOCKED = 0
MOVE_INSIDE = 1
MOVE_OUT = 2
MOVE_IN = 3
MOVE_HIDDEN = 4  # invisible -> invisible

# Direction deltas, clockwise from north: N NE E SE S SW W NW.
_DX = (0, 1, 1, 1, 0, -1, -1, -1)
_DY = (1, 1, 0, -1, -1, -1, 0, 1)


def _decode_move(value_index):
    m = value_index - 17
    d = m >> 1
    step = (m & 1) + 1
    return _DX[d] * step, _DY[d] * step


def _apply_one(rows, n, obj, value, strict, radii, plane_bound, step_unit):
    if obj < 0 or obj >= n:
        return STATUS_NOT_FOUND
    row = rows[obj]
    if value < 17:
        if value < 3:
            attr, val = 0, value
        elif value < 11:
            attr, val = 1, value - 3
        elif value < 14:
            attr, val = 2, value - 11
        else:
            attr, val = 3, value - 14
        if strict and row[attr] == val:
            return STATUS_NO_OP
        row[attr] = val
        return STATUS_OK
    dx, dy = _decode_move(value)
    nx = row[4] + dx * step_unit
    ny = row[5] + dy * step_unit
    if strict:
        if abs(nx) > plane_bound or abs(ny) > plane_bound:
            return STATUS_OUT_OF_PLANE
        r = radii[row[0]]
        for j in range(n):
            if j == obj:
                continue
            other = rows[j]
            ox = nx - other[4]
            oy = ny - other[5]
            limit = r + radii[other[0]]
            if ox * ox + oy * oy < limit * limit:
                return STATUS_OVERLAP
    row[4] = nx
    row[5] = ny
    return STATUS_OK


def apply_steps(state, steps, strict, radii, plane_bound, step_unit, statuses):
    """Apply steps in order, mutating `state`; failed steps are skipped.

    Fills `statuses` with per-step codes and returns the failure count.
    """
    rows = state.tolist()
    n = len(rows)
    rad = radii.tolist()
    failures = 0
    codes = []
    for obj, value in steps.tolist():
        code = _apply_one(rows, n, obj, value, strict, rad, plane_bound, step_unit)
        codes.append(code)
        if code != STATUS_OK:
            failures += 1
    state[:] = rows
    statuses[:] = codes
    return failures


def scene_distance(a, b, visible_bound):
    """Attribute-level mismatch count comparing only what visible objects expose."""
    ra = a.tolist()
    rb = b.tolist()
    d = 0
    for i in range(len(ra)):
        oa = ra[i]
        ob = rb[i]
        va = abs(oa[4]) <= visible_bound and abs(oa[5]) <= visible_bound
        vb = abs(ob[4]) <= visible_bound and abs(ob[5]) <= visible_bound
        if not va and not vb:
            continue
        if va != vb:
            d += 1
        elif oa[4] != ob[4] or oa[5] != ob[5]:
            d += 1
        if oa[0] != ob[0]:
            d += 1
        if oa[1] != ob[1]:
            d += 1
        if oa[2] != ob[2]:
            d += 1
        if oa[3] != ob[3]:
            d += 1
    return d


def collision_at(state, count, skip, x, y, radius, radii):
    """True if a disc of `radius` at (x, y) overlaps any of state[:count], row `skip` excluded."""
    rows = state
    for j in range(count):
        if j == skip:
            continue
        dx = x - int(rows[j, 4])
        dy = y - int(rows[j, 5])
        limit = radius + radii[int(rows[j, 0])]
        if dx * dx + dy * dy < limit * limit:
            return True
    return False


def order_sensitive(state, steps, radii, plane_bound, step_unit):
    """True iff some permutation of the steps has a failed step under strict application."""
    base = state.tolist()
    step_list = steps.tolist()
    rad = radii.tolist()
    n = len(base)
    m = len(step_list)
    if m <= 1:
        return False
    for order in permutations(range(m)):
        rows = [row[:] for row in base]
        for k in order:
            obj, value = step_list[k]
            if _apply_one(rows, n, obj, value, True, rad, plane_bound, step_unit) != STATUS_OK:
                return True
    return False


def move_class(state, obj, value, radii, plane_bound, visible_bound, step_unit):
    """Classify a move value for one object without applying it."""
    row = state[obj]
    x = int(row[4])
    y = int(row[5])
    dx, dy = _decode_move(value)
    nx = x + dx * step_unit
    ny = y + dy * step_unit
    if abs(nx) > plane_bound or abs(ny) > plane_bound:
        return MOVE_BLOCKED
    if collision_at(state, len(state), obj, nx, ny, float(radii[int(row[0])]), radii):
        return MOVE_BLOCKED
    before = abs(x) <= visible_bound and abs(y) <= visible_bound
    after = abs(nx) <= visible_bound and abs(ny) <= visible_bound
    if before and after:
        return MOVE_INSIDE
    if before:
        return MOVE_OUT
    if after:
        return MOVE_IN
    return MOVE_HIDDEN
