def test_rotation_preserves_norm():
    v = np.array([3.0, 4.0])
    theta = 0.3
    rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
    assert np.linalg.norm(rot @ v) == 5.0
    assert np.array_equal(rot.T @ (rot @ v), v)
