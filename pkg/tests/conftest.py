"""Shared frozen reference values for the test suite.

The operating points below were obtained by solving the closed-form gate
conditions and refining on the exact propagator; they are frozen here so
individual tests can use them without re-running the (slower) solvers.
"""

# Y_pi/2 one-period operating point (amplitude, omega), gap-normalized
FROZEN_Y = (2.870267393479348, 2.069348612710831)

# X_pi/2 operating point (amplitude, omega); completed by a pi/delta idle
FROZEN_X = (0.6757287064637192, 0.8065715934229063)

# sqrt-bSWAP operating point: the Y point rescaled by 2
FROZEN_BSWAP = (2 * FROZEN_Y[0], 2 * FROZEN_Y[1])

# self-consistent rotation fraction at (A, omega) = (2.87, 2.07)
FROZEN_XI_Y = 0.700090174091379
