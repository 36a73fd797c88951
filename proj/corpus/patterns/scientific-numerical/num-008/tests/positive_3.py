def rescale_bands(cube):
    lo = cube.min(axis=(0, 1))
    hi = cube.max(axis=(0, 1))
    return (cube - lo) / (hi - lo)
