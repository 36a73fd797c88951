import numpy as np

def normalise_image(img_uint8):
    out = np.zeros_like(img_uint8)
    for c in range(img_uint8.shape[2]):
        channel = img_uint8[:, :, c]
        out[:, :, c] = (channel - channel.mean()) / channel.std()
    return out
