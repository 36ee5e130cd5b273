"""Write PGM and SVG pictures of the gallery fractals into ./demo-out."""
from pathlib import Path

from ifslab import gallery as gl
from ifslab.render import render_pgm, render_svg


def main(out=Path("demo-out")):
    cantor = gl.cantor_system(ref_depth=8)
    render_pgm(cantor.fractal_ref, out / "cantor.pgm", width=1024, viewport=(0, 1))
    carpet = gl.sierpinski_carpet_system(ref_depth=2)
    render_svg(gl.cell_centers(carpet, 4), out / "carpet.svg", width=729)
    triangle = gl.sierpinski_triangle_system(ref_depth=2)
    render_pgm(gl.cell_centers(triangle, 7), out / "triangle.pgm", width=512)
    for p in sorted(out.iterdir()):
        print(p, p.stat().st_size, "bytes")


if __name__ == "__main__":
    main()
