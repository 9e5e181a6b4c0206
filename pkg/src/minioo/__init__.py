"""Analysis workbench for MiniOO, a small single-inheritance OO language."""

__version__ = "0.1.0"
