"""
chaoskit: shadowing, tuple relations and distributional chaos on subshifts of finite type.
"""

__version__ = "1.0.0"
