"""Twisted de Rham and Hodge cohomology of torsion line bundles on
hyperelliptic curves over finite fields, by exact linear algebra."""

__version__ = "0.1.0"
