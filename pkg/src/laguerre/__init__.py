"""Finite Laguerre spaces over quadric cones in PG(n, q), and checkers for their line geometry."""
from .model import ConfigError, Model, ModelConfig, build_model

__all__ = ["ConfigError", "Model", "ModelConfig", "build_model"]
