"""
qptlab: phase-transition experiments for QAOA and quantum annealing on random SAT.
"""

__version__ = "0.1.0"
