#!/usr/bin/env python3
"""Regenerates data/foods.csv, the synthetic 400-food fixture.

The fixture mirrors the documented CSV schema and contains a planted 10-food
combination (PLANTED_INDICES) whose per-100g sums hit the nephrotic targets of
the reference patient (male, 50 kg, 165 cm, 40 y, bed rest, minor stress)
exactly, summing in ascending index order the way the library accumulates.

Reference rows 114, 229, 231 and 353 are fixed and must not be regenerated.
"""
import random
import sys

OUT = "data/foods.csv"
HEADER = ("index,code,name,energy_kcal,protein_g,fat_g,carb_g,calcium_mg,"
          "phosphorus_mg,sodium_mg,potassium_mg,serving_g")

# reference patient targets, replicating the library's arithmetic exactly
BMR = 66.0 + 13.7 * 50.0 + 5.0 * 165.0 - 6.8 * 40.0
ENERGY = BMR * 1.2 * 1.4
PROTEIN = 1.0 * 50.0
FAT = 0.175 * ENERGY / 9.0
SODIUM = 1000.0

PLANTED_INDICES = [17, 43, 88, 120, 151, 198, 240, 287, 333, 390]

FIXED_ROWS = {
    114: ("IDA005", "Soy milk", 41, 3.5, 2.5, 5, 50, 45, 0, 0, 200),
    229: ("IDH001", "Eggs of local chicken", 174, 11, 14, 1.2, 68, 268, 190, 141, 55),
    231: ("IDA057", "Fried chicken -Breast", 298, 34, 17, 0.1, 90, 284, 0, 0, 100),
    353: ("IDJ010", "Condensed milk- unsweetened", 138, 7, 7.9, 9.9, 243, 195, 140, 303, 100),
}

BASES = [
    "rice", "brown rice", "glutinous rice", "corn", "young corn", "cassava",
    "sweet potato", "taro", "potato", "sago", "noodles", "macaroni", "bread",
    "rice flour", "tapioca", "mung beans", "red beans", "black beans",
    "soybeans", "tempeh", "tofu", "peanuts", "cashew nuts", "oncom",
    "spinach", "red spinach", "water spinach", "cassava leaves", "papaya leaves",
    "carrot", "cabbage", "cauliflower", "lettuce", "bean sprouts", "long beans",
    "eggplant", "tomato", "cucumber", "pumpkin", "chayote", "bitter gourd",
    "banana", "mango", "papaya", "orange", "pineapple", "watermelon",
    "snake fruit", "guava", "rambutan", "avocado", "jackfruit", "starfruit",
    "duck meat", "beef", "beef liver", "goat meat", "chicken liver",
    "milkfish", "tilapia", "catfish", "mackerel", "anchovy", "tuna", "snapper",
    "shrimp", "squid", "mussels", "snail", "salted fish",
    "duck egg", "quail egg", "cow milk", "goat milk", "yoghurt", "skim milk powder",
    "coconut milk", "coconut flesh", "palm sugar", "cane sugar", "honey",
    "margarine", "coconut oil", "seaweed", "mushroom", "petai", "jengkol",
]
PREPS = ["", "steamed", "boiled", "fried", "grilled", "roasted", "fresh",
         "dried", "baked", "sauteed", "pickled", "mashed", "shredded"]
SERVINGS = [10, 13, 15, 20, 25, 30, 40, 50, 60, 75, 80, 90, 100, 110, 120,
            135, 150, 175, 200]


def make_names(rng, count):
    names = []
    seen = set(v[1] for v in FIXED_ROWS.values())
    while len(names) < count:
        base = rng.choice(BASES)
        prep = rng.choice(PREPS)
        name = f"{prep} {base}".strip().capitalize()
        if name in seen:
            continue
        seen.add(name)
        names.append(name)
    return names


def random_food(rng):
    energy = round(rng.uniform(20.0, 420.0) * 4) / 4  # 0.25 kcal grid
    protein = round(rng.uniform(0.3, 9.7), 1)
    fat = round(rng.uniform(0.0, 8.5), 1)
    carb = max(0.0, round((energy - 4.0 * protein - 9.0 * fat) / 4.0, 1))
    calcium = rng.randint(5, 300)
    phosphorus = rng.randint(10, 400)
    sodium = rng.randint(0, 200)
    potassium = rng.randint(30, 500)
    return [energy, protein, fat, carb, calcium, phosphorus, sodium, potassium]


def fmt(x):
    if isinstance(x, float) and x == int(x):
        return str(int(x))
    return repr(x) if isinstance(x, float) else str(x)


def main():
    rng = random.Random(20240917)
    names = make_names(rng, 400)

    rows = {}
    for idx, row in FIXED_ROWS.items():
        rows[idx] = list(row)

    planted = sorted(PLANTED_INDICES)
    # first nine planted foods: ordinary draws on coarse grids
    planted_vals = {}
    for idx in planted[:9]:
        energy = round(rng.uniform(150.0, 300.0) * 4) / 4
        protein = round(rng.uniform(2.0, 8.0) * 4) / 4
        fat = round(rng.uniform(1.0, 7.0) * 4) / 4
        sodium = float(rng.randint(40, 160))
        planted_vals[idx] = [energy, protein, fat, sodium]

    # the last one absorbs the residual so the ascending-order sums are exact
    def residual(target, col):
        acc = 0.0
        for idx in planted[:9]:
            acc += planted_vals[idx][col]
        return target - acc

    last = [residual(ENERGY, 0), residual(PROTEIN, 1), residual(FAT, 2),
            residual(SODIUM, 3)]
    if any(v <= 0 for v in last):
        sys.exit(f"residual food is not plausible: {last}; re-seed")
    planted_vals[planted[9]] = last

    for col, target in ((0, ENERGY), (1, PROTEIN), (2, FAT), (3, SODIUM)):
        acc = 0.0
        for idx in planted:
            acc += planted_vals[idx][col]
        assert acc == target, (col, acc, target)

    for idx in planted:
        energy, protein, fat, sodium = planted_vals[idx]
        carb = max(0.0, round((energy - 4.0 * protein - 9.0 * fat) / 4.0, 1))
        rows[idx] = [None, None, energy, protein, fat, carb,
                     rng.randint(5, 300), rng.randint(10, 400), sodium,
                     rng.randint(30, 500), None]

    lines = [HEADER]
    for idx in range(1, 401):
        name = names[idx - 1]
        serving = rng.choice(SERVINGS)
        if idx in FIXED_ROWS:
            code, name, *vals = rows[idx]
            fields = [str(idx), code, name] + [fmt(v) for v in vals]
        elif idx in rows:  # planted
            vals = rows[idx]
            fields = [str(idx), f"IDS{idx:03d}", name,
                      fmt(vals[2]), fmt(vals[3]), fmt(vals[4]), fmt(vals[5]),
                      fmt(vals[6]), fmt(vals[7]), fmt(vals[8]), fmt(vals[9]),
                      str(serving)]
        else:
            vals = random_food(rng)
            fields = [str(idx), f"IDF{idx:03d}", name] + [fmt(v) for v in vals] + [str(serving)]
        lines.append(",".join(fields))

    with open(OUT, "w", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {OUT}: 400 rows; planted {planted}")
    print(f"targets: energy {ENERGY!r} protein {PROTEIN!r} fat {FAT!r} sodium {SODIUM!r}")


if __name__ == "__main__":
    main()
