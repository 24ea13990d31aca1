"""Linear ideals, hyperplane arrangements, matroids and sign-pattern nerves."""
