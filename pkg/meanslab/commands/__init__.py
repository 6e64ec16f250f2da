"""Command handlers for the meanslab CLI."""
