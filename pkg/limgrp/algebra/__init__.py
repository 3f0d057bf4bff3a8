"""
Algebra layer

Exact combinatorics on words, graphs and integer matrices.  Nothing in this
package performs I/O; parsing lives in `limgrp.language`.
"""
