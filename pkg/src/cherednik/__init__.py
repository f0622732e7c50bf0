"""Exact computer-algebra checks for the Cherednik algebra of type C1^vee C1, its confluent
degenerations, their spherical subalgebras, q-difference representations and q-Askey families."""
