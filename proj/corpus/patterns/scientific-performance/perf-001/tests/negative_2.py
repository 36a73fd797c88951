from numba import njit

@njit(cache=True)
def relu_inplace(grid):
    rows, cols = grid.shape
    for r in range(rows):
        for c in range(cols):
            if grid[r, c] < 0:
                grid[r, c] = 0.0
    return grid
