"""Regenerate the sample laws in this directory."""
import json
import math
from pathlib import Path

HERE = Path(__file__).resolve().parent


def write(name, law):
    (HERE / name).write_text(json.dumps(law) + "\n")


def density(origin, step, samples):
    samples = [0.0] + list(samples[1:-1]) + [0.0]
    mass = step * sum(samples)
    return {"origin": origin, "step": step, "samples": [s / mass for s in samples]}


def sampled(pdf, left, right, cells):
    h = (right - left) / cells
    return density(left, h, [pdf(left + i * h) for i in range(cells + 1)])


write("degenerate.json", {"discrete_weight": 1, "atoms": [[3, 1]]})
write("fair_bernoulli.json", {"discrete_weight": 1, "atoms": [[0, 0.5], [1, 0.5]]})
write("two_atom.json", {"discrete_weight": 1, "atoms": [[0, 2 / 3], [1, 1 / 3]]})
write("skewed_pair.json", {"discrete_weight": 1, "atoms": [[0, 0.2], [1, 0.8]]})

lam = 0.7
poisson = [math.exp(-lam) * lam**k / math.factorial(k) for k in range(41)]
total = sum(poisson)
write("poisson.json", {"discrete_weight": 1, "atoms": [[k, p / total] for k, p in enumerate(poisson)]})

geometric = [2.0**-k for k in range(1, 53)]
geometric[-1] += 1 - sum(geometric)
write("geometric.json", {"discrete_weight": 1, "atoms": [[k + 1, p] for k, p in enumerate(geometric)]})

uniform = sampled(lambda x: 1.0, 0.0, 1.0, 1024)
write("uniform.json", {"discrete_weight": 0, "atoms": [], "density": uniform})

normal = sampled(lambda x: math.exp(-x * x / 2), -4.0, 4.0, 1024)
write("truncated_normal.json", {"discrete_weight": 0, "atoms": [], "density": normal})

write("atom_plus_uniform.json", {"discrete_weight": 0.5, "atoms": [[0, 1]], "density": uniform})
write("centered_atom_normal.json", {"discrete_weight": 0.3, "atoms": [[0, 1]], "density": normal})
write("pair_plus_uniform.json",
      {"discrete_weight": 0.5, "atoms": [[0, 0.5], [1, 0.5]], "density": uniform})
