import tempfile

with tempfile.TemporaryDirectory(dir="/tmp") as scratch:
    cache_file = os.path.join(scratch, "features.npy")
    np.save(cache_file, compute_features())
