from fmsync.ui.print.visualize import render_oracle, render_simulation, render_verification

__all__ = ["render_oracle", "render_simulation", "render_verification"]
