"""UI components for the meanslab CLI."""
