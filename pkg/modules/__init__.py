"""Pattern avoidance, Comtet statistics and generating-function verification."""
