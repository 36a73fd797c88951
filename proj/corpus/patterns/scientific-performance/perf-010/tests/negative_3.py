class Renderer:
    def __init__(self, device):
        self.device = device
        self.offsets = torch.tensor([[0.0, 1.0], [1.0, 0.0]], device=device)

    def frame(self, scene, t):
        background = torch.zeros(3, 512, 512, device=self.device)
        return scene.draw(background, self.offsets * t)
