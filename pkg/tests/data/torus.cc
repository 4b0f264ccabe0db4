cellcomplex v1
dim 2
cell a00*a10 0
cell a00*a11 0
cell a00*a12 0
cell a01*a10 0
cell a01*a11 0
cell a01*a12 0
cell a02*a10 0
cell a02*a11 0
cell a02*a12 0
cell a00*a10_1 1
cell a00*a10_2 1
cell a00*a11_2 1
cell a01*a10_1 1
cell a01*a10_2 1
cell a01*a11_2 1
cell a02*a10_1 1
cell a02*a10_2 1
cell a02*a11_2 1
cell a00_1*a10 1
cell a00_1*a11 1
cell a00_1*a12 1
cell a00_2*a10 1
cell a00_2*a11 1
cell a00_2*a12 1
cell a01_2*a10 1
cell a01_2*a11 1
cell a01_2*a12 1
cell a00_1*a10_1 2
cell a00_1*a10_2 2
cell a00_1*a11_2 2
cell a00_2*a10_1 2
cell a00_2*a10_2 2
cell a00_2*a11_2 2
cell a01_2*a10_1 2
cell a01_2*a10_2 2
cell a01_2*a11_2 2
bd a00*a10_1 1:a00*a11 -1:a00*a10
bd a00*a10_2 1:a00*a12 -1:a00*a10
bd a00*a11_2 1:a00*a12 -1:a00*a11
bd a01*a10_1 1:a01*a11 -1:a01*a10
bd a01*a10_2 1:a01*a12 -1:a01*a10
bd a01*a11_2 1:a01*a12 -1:a01*a11
bd a02*a10_1 1:a02*a11 -1:a02*a10
bd a02*a10_2 1:a02*a12 -1:a02*a10
bd a02*a11_2 1:a02*a12 -1:a02*a11
bd a00_1*a10 1:a01*a10 -1:a00*a10
bd a00_1*a11 1:a01*a11 -1:a00*a11
bd a00_1*a12 1:a01*a12 -1:a00*a12
bd a00_2*a10 1:a02*a10 -1:a00*a10
bd a00_2*a11 1:a02*a11 -1:a00*a11
bd a00_2*a12 1:a02*a12 -1:a00*a12
bd a01_2*a10 1:a02*a10 -1:a01*a10
bd a01_2*a11 1:a02*a11 -1:a01*a11
bd a01_2*a12 1:a02*a12 -1:a01*a12
bd a00_1*a10_1 1:a01*a10_1 -1:a00*a10_1 -1:a00_1*a11 1:a00_1*a10
bd a00_1*a10_2 1:a01*a10_2 -1:a00*a10_2 -1:a00_1*a12 1:a00_1*a10
bd a00_1*a11_2 1:a01*a11_2 -1:a00*a11_2 -1:a00_1*a12 1:a00_1*a11
bd a00_2*a10_1 1:a02*a10_1 -1:a00*a10_1 -1:a00_2*a11 1:a00_2*a10
bd a00_2*a10_2 1:a02*a10_2 -1:a00*a10_2 -1:a00_2*a12 1:a00_2*a10
bd a00_2*a11_2 1:a02*a11_2 -1:a00*a11_2 -1:a00_2*a12 1:a00_2*a11
bd a01_2*a10_1 1:a02*a10_1 -1:a01*a10_1 -1:a01_2*a11 1:a01_2*a10
bd a01_2*a10_2 1:a02*a10_2 -1:a01*a10_2 -1:a01_2*a12 1:a01_2*a10
bd a01_2*a11_2 1:a02*a11_2 -1:a01*a11_2 -1:a01_2*a12 1:a01_2*a11
