"""Finite double Boolean algebras (with operators): axioms, parts, filters, representation."""
