"""loophom: exact homology of iterated loop spaces of stunted projective
spaces, with a single-loop cobar cross-check.

Module map:
  exactlin  exact fields, sparse rank/kernel/solve
  graded    degree-indexed bases, truncated chain complexes, homology
  lie       free graded Lie algebras with a shifted bracket (Lyndon basis)
  freepn    free Poisson-with-operations algebras: basis, normal forms
  spaces    coalgebra + Steenrod presentations of the input spaces
  dgal      the differential on the free algebra pages and their homology
  cobar     Adams cobar construction of a coalgebra (independent oracle)
  counting  closed-form dimension series used as cross-checks
  cli       command-line driver
"""

__version__ = "0.1.0"
