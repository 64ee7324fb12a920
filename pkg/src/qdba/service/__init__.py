"""HTTP service surface: FastAPI app plus the shared request/response models."""

from .app import app, handle_histogram, handle_oracle, handle_run, handle_sweep

__all__ = ["app", "handle_histogram", "handle_oracle", "handle_run", "handle_sweep"]
