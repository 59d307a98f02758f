"""Exact calculus of derivatives and adduced representations for GL(n,R) and GL(n,C)."""
