import torch

def setup(seed):
    torch.manual_seed(seed)

def augment(image):
    if np.random.rand() < 0.5:
        image = image[:, ::-1]
    angle = np.random.uniform(-15, 15)
    return rotate(image, angle)
