from torchvision import transforms
import torch

tf = transforms.Compose([transforms.ToTensor(),
                         transforms.Normalize([0.5, 0.5, 0.5], [0.25, 0.25, 0.25])])

def predict(model, pil_image):
    with torch.no_grad():
        return model.eval()(tf(pil_image).unsqueeze(0)).argmax(1).item()
