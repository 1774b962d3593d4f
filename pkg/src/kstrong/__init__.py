"""k-strong defining sets in Latin squares, with a focus on B_n."""
