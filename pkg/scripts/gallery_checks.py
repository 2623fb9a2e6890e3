"""Run the diagnostics for the four gallery maps and the crossing-offset ladders."""

import json

from asymlog import gallery


def main():
    for d in (
        gallery.gallery_regular_check(0.05),
        gallery.gallery_boundary_layer_check(1e-4),
        gallery.gallery_decay_check(1e-4),
        gallery.gallery_blowup_check(1e-3, 1.0),
        gallery.gallery_blowup_check(1e-3, 1.0, margin=35.0),
    ):
        print(json.dumps(d.as_dict(), sort_keys=True))
    for kind in ("bl", "decay"):
        offs = gallery.crossing_offsets(kind)
        print(f"{kind} crossing offsets over eps = {gallery.GALLERY_LADDER}: "
              f"{[round(v, 3) for v in offs]}, range {max(offs) - min(offs):.3f}")


if __name__ == "__main__":
    main()
