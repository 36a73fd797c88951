def rescale_bands(cube):
    lo = cube.min(axis=(0, 1))
    span = cube.max(axis=(0, 1)) - lo
    span = np.where(span > 0, span, 1.0)
    return (cube - lo) / span
