"""Small helpers for sets encoded as Python integers (bit i = element i)."""


def full(n):
    return (1 << n) - 1


def members(mask):
    """Indices of the set bits, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def from_indices(indices):
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


def count(mask):
    return bin(mask).count("1")


def subset(a, b):
    return a & ~b == 0


def bit_key(mask, n):
    """Sort key reading the vector from element 0 to element n-1."""
    return tuple((mask >> i) & 1 for i in range(n))


def check_width(mask, n, what="set"):
    from .errors import DimensionError

    if not isinstance(mask, int) or mask < 0 or mask >> n:
        raise DimensionError(f"{what} {mask!r} does not fit a carrier of size {n}")
    return mask
