import pandas as pd

def lookup_price(sku):
    catalog = pd.read_csv("catalog.csv", index_col="sku")
    return catalog.loc[sku, "price"]

totals = [sum(lookup_price(s) for s in basket) for basket in baskets]
