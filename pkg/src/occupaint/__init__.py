"""Occupancy-map toolkit: simulated depth sensing, map fusion and
inpainting networks, and a navigation benchmark on predicted maps.

The pipeline, end to end:

1. ``worldgen``  - procedural indoor floor plans with a fine truth raster.
2. ``sensor``    - planar ray casting producing labeled point samples.
3. ``occupancy`` - log-odds grids, three-view fusion, probability maps.
4. ``dataset``   - pose sweeps into (input, target) map pairs on disk.
5. ``neuralnet`` - from-scratch tensor ops with hand-derived backward
   passes, verified by finite differences.
6. ``models``    - encoder/decoder generator, patch discriminator, the
   supervised and adversarial training loops, inpainting metrics.
7. ``navsim``    - per-step sensing, global map fusion, cost-map
   planning and the success-weighted path-duration score.
8. ``cli``       - the ``occupaint`` command-line surface.
"""

__version__ = "0.1.0"
