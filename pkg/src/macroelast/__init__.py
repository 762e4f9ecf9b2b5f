"""macroelast - exact barycentric macroelement elasticity complexes and a mixed elasticity solver."""
