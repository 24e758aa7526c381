"""
Diversity and independence scores
=================================

A candidate joins the crowd only if it is independent of the members
(judged from initial parameters) and diverse with respect to them
(judged from cluster sizes through APMM and A3).
"""

import numpy as np

from wocce import a3, bpi, diversity, independence, likeness, make_partition, parse_descriptor
from wocce.diversity import ClusterView, apmm

km = parse_descriptor("kmeans")
ward = parse_descriptor("hier:ward:cosine")

# APMM of a half-size cluster against a balanced 2-clustering of 4 samples
bal = make_partition([0, 0, 1, 1], km, d=1)
print("apmm:", apmm(ClusterView([0, 1], 4), bal))
print("a3 of a partition against itself:", a3(bal, [bal]))
print("diversity:", diversity(bal, [bal]), " empty crowd:", diversity(bal, []))

# likeness eliminates the closest pair of seeds at every step
a = np.array([[0.0], [1.0]])
b = np.array([[0.0], [3.0]])
print("likeness:", likeness(a, b))

p1 = make_partition([0, 1, 0, 1], km, a)
p2 = make_partition([0, 1, 0, 1], km, b)
p3 = make_partition([0, 1, 0, 1], ward, d=1)
print("bpi same family:", bpi(p1, p2), " different family:", bpi(p1, p3))
print("independence of p1 against [p2, p3]:", independence(p1, [p2, p3]))
