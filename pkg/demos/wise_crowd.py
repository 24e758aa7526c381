"""
Building a wise crowd
=====================

The feedback loop generates candidates round-robin over the roster,
admits those passing both thresholds and aggregates the crowd through a
co-association matrix and an average-linkage cut.
"""

from collections import Counter

from wocce import (
    DEFAULT_ROSTER,
    ThresholdConfig,
    accuracy,
    build_crowd,
    co_association,
    load_dataset,
    nmi,
    wocce_consensus,
)

ds = load_dataset("iris")
cfg = ThresholdConfig(it=0.2, dt=0.06, ct=1, kb=ds.k_true)
crowd = build_crowd(ds, DEFAULT_ROSTER, cfg, seed=2024)

verdicts = Counter(r.verdict.value for r in crowd.admission_log)
print(f"{len(crowd.admission_log)} candidates, {len(crowd)} admitted: {dict(verdicts)}")
for rec in crowd.admission_log[:5]:
    print("  ", rec.to_dict())

c = co_association(crowd, ds.n)
print("co-association built from", c.n_members, "members; mean entry", round(float(c.mean()), 3))

final = wocce_consensus(crowd, ds.n, cfg.kb)
print(f"consensus: accuracy {accuracy(final, ds.labels):.2f}%  nmi {nmi(final, ds.labels):.3f}")

# a strict independence threshold leaves very few members
strict = build_crowd(ds, DEFAULT_ROSTER, ThresholdConfig(it=0.95, dt=0.06, kb=3), seed=2024)
print("with it=0.95 the crowd keeps", len(strict), "members")
