"""Report and job persistence for meanslab."""
