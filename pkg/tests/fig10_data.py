"""Hand-transcribed matrices of the Fig 10 example (rows and columns as (label, grade))."""

U, W = ("g:u", "x0"), ("g:w", "x0")
V1, V2 = ("g:v", "x1"), ("g:v", "x2")
UW, UV, VW = ("g:u-w", "x0"), ("g:u-v", "x1"), ("g:v-w", "x2")
UVW = ("g:u-v-w", "x6")
R3, R4 = ("r0", "x3"), ("r1", "x4")
RR5, RR6 = ("rr0", "x5"), ("rr1", "x6")

G0 = [U, W, V1, V2]
G1 = [UW, UV, VW]

# (f_1 | p1_0): columns uw, uv, vw, r3, r4
KERNEL_EXAMPLE = [
    [1, 1, 0, 0, 0],
    [1, 0, 1, 0, 0],
    [0, 1, 0, 1, 1],
    [0, 0, 1, 1, 1],
]
F1 = [
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 0],
    [0, 0, 1],
]
F2 = [[1], [1], [1]]
P1_0 = [[0, 0], [0, 0], [1, 1], [1, 1]]
P2_0 = [[1, 1], [1, 1]]
# oracle-derived H_1 dims at x0..x6
H1 = [0, 0, 0, 1, 1, 1, 0]


def dense(m):
    """Rows of a GradedMatrix as 0/1 lists."""
    return m.entries.to_dense()
