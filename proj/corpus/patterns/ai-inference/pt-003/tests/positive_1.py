import torch

device = torch.device("cuda" if torch.cuda.is_available() else "cpu")
state = torch.load("checkpoints/best.pt")
model = Net()
model.load_state_dict(state["model"])
model.to(device).eval()
