"""Tour of the conformal lift: points, spheres, incidence, and motions.

Run with:  python3 demos/conformal_geometry.py
"""

import numpy as np

from mlgp import (
    RigidMotion,
    classify_point,
    conformal_dot,
    embed_point,
    motor_matrix_point,
    motor_matrix_sphere,
    point_normalize,
    extract_center_radius_sq,
    rotation_about_axis,
    sphere_from_center_radius,
)

rng = np.random.default_rng(0)

print("1. Lifting points and spheres")
x = np.array([1.0, 2.0, 2.0])
print(f"   point {x} lifts to {embed_point(x)}")
s = sphere_from_center_radius([0.0, 0.0, 0.0], 3.0)
print(f"   sphere c=(0,0,0), r=3 lifts to {s}")

print("2. The dot product of the lifted vectors measures incidence")
d = conformal_dot(embed_point(x), s)
print(f"   dot = {d:+.3f}  (point is on the sphere: |x| = 3 = r)")
print(f"   classify: {classify_point(embed_point(x), s)}")
for probe in ([0.0, 0.0, 0.0], [4.0, 0.0, 0.0]):
    p = embed_point(np.array(probe))
    print(f"   {probe}: dot {conformal_dot(p, s):+7.3f} -> {classify_point(p, s)}")

print("3. Learned sphere vectors carry an arbitrary scale factor")
raw = -2.5 * sphere_from_center_radius([1.0, 0.0, -1.0], 1.5)
normalized, gamma = point_normalize(raw)
center, r_sq = extract_center_radius_sq(normalized)
print(f"   raw vector {np.round(raw, 3)}")
print(f"   scale factor {gamma}, center {center}, r^2 {r_sq}")
print("   negative scale factors flip the inside/outside response (O-sphere)")

print("4. Rigid motions act on lifted vectors through 5x5 matrices")
motion = RigidMotion(rotation_about_axis([0, 0, 1], np.pi / 2), np.array([1.0, 0.0, 0.0]))
ms = motor_matrix_sphere(motion)
mp = motor_matrix_point(motion)
print(f"   adjoint law max |M_X^T M_S - I| = {np.abs(mp.T @ ms - np.eye(5)).max():.2e}")
moved_sphere = ms @ s
c2, r_sq2 = extract_center_radius_sq(moved_sphere)
print(f"   moved sphere center {np.round(c2, 12)}, r^2 {r_sq2} (radius preserved)")

print("5. Moving point and sphere together leaves the dot product unchanged")
before = conformal_dot(embed_point(x), s)
after = conformal_dot(mp @ embed_point(x), ms @ s)
print(f"   before {before:+.6f}, after {after:+.6f}, diff {abs(after - before):.2e}")
