"""Pure-Python filtering kernel; :mod:`msetord._kernel` mirrors it in Cython.

Both sides share the same calling convention.  ``mins``/``maxs`` are the
store's bound caches, ``*vars``/``*mult`` list the distinct variables of one
side of the constraint with their multiplicity, and ``lo``/``width`` describe
the constraint's common value range.

Notation used below: with F the multiset of x floors and C the multiset of
y ceilings, ``diff[u] = F[u] - C[u]`` per value offset u.  The multiset order
of F against C is the sign of the highest non-zero ``diff`` entry, called
``top``.  Raising one x from f to v (or lowering one y from c to w) only
touches two entries of ``diff``, so with ``top`` and ``prev_nz`` (the next
non-zero entry below each offset) the outcome of any such swap costs O(1).
"""

from array import array

BACKEND = "python"


def _sign(x):
    return (x > 0) - (x < 0)


def compare_bound_msets(vals_a, vars_a, mult_a, vals_b, vars_b, mult_b, lo, width):
    """Sign of the multiset order between {vals_a[v]} and {vals_b[v]}."""
    diff = [0] * width
    for v, k in zip(vars_a, mult_a):
        diff[vals_a[v] - lo] += k
    for v, k in zip(vars_b, mult_b):
        diff[vals_b[v] - lo] -= k
    for u in range(width - 1, -1, -1):
        if diff[u]:
            return 1 if diff[u] > 0 else -1
    return 0


def msetord_filter(mins, maxs, xvars, xmult, yvars, ymult, lo, width, strict):
    """Bounds that make the multiset ordering generalised arc consistent.

    Returns ``(ok, prunes)``.  ``ok`` is False (and ``prunes`` None) when no
    assignment satisfies the constraint.  Otherwise ``prunes`` is four
    ``array('q')``: x variables whose maximum must drop with their new upper
    bounds, then y variables whose minimum must rise with their new lower
    bounds.
    """
    diff = [0] * width
    for v, k in zip(xvars, xmult):
        diff[mins[v] - lo] += k
    for v, k in zip(yvars, ymult):
        diff[maxs[v] - lo] -= k

    prev_nz = [0] * width
    top = -1
    for u in range(width):
        prev_nz[u] = top
        if diff[u]:
            top = u

    def accept(s):
        return s < 0 if strict else s <= 0

    if not accept(_sign(diff[top]) if top >= 0 else 0):
        return False, None

    def swap_sign(p, q, k):
        # order of F against C after k copies move from offset q up to p > q
        if top > p:
            return _sign(diff[top])
        if top == p:
            t = diff[p] + k
            if t:
                return _sign(t)
        else:
            return 1
        w = prev_nz[p]
        if w > q:
            return _sign(diff[w])
        if w == q:
            t = diff[q] - k
            if t:
                return _sign(t)
            w = prev_nz[q]
            return _sign(diff[w]) if w >= 0 else 0
        return -1

    xp_var, xp_bound = array("q"), array("q")
    for v, k in zip(xvars, xmult):
        f = mins[v] - lo
        if top < 0 or f >= top:
            ub = f
        elif accept(swap_sign(top, f, k)):
            ub = top
        else:
            ub = top - 1
        if ub + lo < maxs[v]:
            xp_var.append(v)
            xp_bound.append(ub + lo)

    yp_var, yp_bound = array("q"), array("q")
    for v, k in zip(yvars, ymult):
        c = maxs[v] - lo
        if top < 0 or c > top:
            lb = c
        elif c < top:
            continue
        else:
            t = diff[top] + k
            if t < 0:
                continue
            if t > 0:
                lb = c
            else:
                below = prev_nz[top]
                if below < 0 or diff[below] < 0:
                    continue
                lb = below if accept(swap_sign(top, below, k)) else below + 1
        if lb + lo > mins[v]:
            yp_var.append(v)
            yp_bound.append(lb + lo)

    return True, (xp_var, xp_bound, yp_var, yp_bound)
