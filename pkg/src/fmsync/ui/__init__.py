"""Terminal output for fmsync."""
