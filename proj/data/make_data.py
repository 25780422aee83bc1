#!/usr/bin/env python3
# One-time helper used while authoring the bundled data files; kept for
# provenance. Writes the published Kraus sets as channel JSON and prints the
# derived constants frozen into the test suites.
import json
import numpy as np

def mat_json(m):
    out = []
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            out.append([float(np.real(m[i, j])), float(np.imag(m[i, j]))])
    return out

# --- phase damping, published printed values ------------------------------
c1 = -0.4723 + 0j
c2 = 0.0181 - 0.4961j
c3 = -0.0085 - 0.5019j
c4 = -0.5276 - 0.007j
pd = [
    np.diag([c1, -c1, -c1, c1]),
    np.diag([c2, c2, -c2, -c2]),
    np.diag([c3, -c3, c3, -c3]),
    np.diag([c4, c4, c4, c4]),
]

# --- MFGP, published printed values ---------------------------------------
mfgp = [
    np.array([
        [0.1231 - 0.0877j, -0.0038 + 0.0026j, -0.0077 + 0.0085j, 0.0023 + 0.0004j],
        [0.0122 - 0.0279j, -0.1899 - 0.1181j, 0.0101 + 0.0085j, 0.0097 + 0.006j],
        [-0.0174 + 0.0165j, -0.0073 + 0.0042j, -0.3573 + 0.4876j, 0.0167 - 0.0073j],
        [-0.0036 - 0.0034j, -0.0056 + 0.0133j, -0.0009 + 0.0275j, 0.5454 + 0.4572j],
    ]),
    np.array([
        [-0.0434 - 0.4568j, 0.0061 + 0.0085j, 0.0095 + 0.0121j, -0.0055 - 0.0064j],
        [0.0329 + 0.0096j, 0.181 - 0.4594j, -0.0029 + 0.0105j, -0.0003 + 0.0002j],
        [0.0017 - 0.0235j, 0.0036 - 0.003j, -0.35 - 0.3762j, 0.0141 - 0.0184j],
        [-0.0055 - 0.0042j, 0.0124 - 0.007j, 0.012 + 0.0275j, 0.3231 - 0.3787j],
    ]),
    np.array([
        [-0.4842 - 0.5645j, 0.0305 + 0.0057j, 0.027 - 0.0027j, -0.0011 + 0.0033j],
        [-0.0206 + 0.0166j, -0.327 + 0.0929j, 0.0007 - 0.0019j, 0.0034 - 0.0026j],
        [0.0102 + 0.0216j, -0.0024 + 0.0064j, 0.3035 - 0.2407j, 0.0096 + 0.0199j],
        [-0.0005 - 0.0058j, 0.0024 + 0.0041j, 0.015 + 0.006j, -0.0094 + 0.4166j],
    ]),
    np.array([
        [0.4475 + 0.0416j, -0.0139 + 0.0256j, -0.0099 + 0.0021j, 0.0055 + 0.0044j],
        [-0.0239 - 0.0035j, -0.7081 + 0.2924j, -0.0143 - 0.0018j, 0.0063 - 0.0201j],
        [0.0027 - 0.0084j, 0.0055 + 0.0079j, -0.1662 - 0.4034j, 0.0107 - 0.0154j],
        [0.0045 - 0.0062j, 0.0167 - 0.0093j, -0.0253 + 0.0106j, 0.1022 - 0.1527j],
    ]),
]

for name, ops in [("kraus_phase_damping_published.json", pd),
                  ("kraus_mfgp_published.json", mfgp)]:
    with open(name, "w") as f:
        json.dump({"dim": 4, "kraus": [mat_json(a) for a in ops]}, f, indent=1)
        f.write("\n")

def completeness(ops):
    s = sum(a.conj().T @ a for a in ops)
    return np.max(np.abs(s - np.eye(4)))

print("pd defect:", completeness(pd))
print("mfgp defect:", completeness(mfgp))
print("mfgp norms:", [float(np.linalg.norm(a, 2)) for a in mfgp])

# --- derived constants -----------------------------------------------------
g1, g2, t = 1.4, 1.5, 2.0
p1 = (1 + np.exp(-g1 * t)) / 2
p2 = (1 + np.exp(-g2 * t)) / 2
w = [p1 * p2, p1 * (1 - p2), (1 - p1) * p2, (1 - p1) * (1 - p2)]
print("weights:", [f"{x:.12f}" for x in w])
print("sqrt weights:", [f"{np.sqrt(x):.12f}" for x in w])
print("fidelity vs identity:", w[0] / np.sqrt(sum(x * x for x in w)))

kets = [np.array([1, 0]), np.array([0, 1]),
        np.array([1, 1]) / np.sqrt(2), np.array([1, 1j]) / np.sqrt(2)]
proj = [np.outer(np.kron(a, b), np.conj(np.kron(a, b)))
        for a in kets for b in kets]
v = np.stack([p.reshape(-1) for p in proj], axis=1)
gram = v.conj().T @ v
ev = np.linalg.eigvalsh(gram)
print("gram condition:", ev[-1] / ev[0])
