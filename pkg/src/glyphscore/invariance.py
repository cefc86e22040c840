"""Viewing-size math and degradation sheets for the two invariance criteria.

Geometry: the glyph is sized for a visual field angle at a viewing distance,
then rescaled through 5/5..1/5 and laid out on one sheet next to a 4cm x 4cm
calibration square. Colorimetry: a 4x5 grid shifts brightness and contrast by
growing magnitudes in all four sign combinations. The assessor looks at the
sheets; the level functions consume the assessor's invariant/variant flags.

Note on the size formula: a glyph spanning the full visual field angle covers
2*VD*tan(VF/2); the half angle subtends the radius. This reproduces the usual
4.37 cm diameter at VF=5, VD=50.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from PIL import Image, ImageDraw, ImageFont, UnidentifiedImageError

from .criteria import COLORIMETRY_MAGNITUDES
from .model import SCHEMA_VERSION
from .rationals import format_minimal, frac, round_half_up
from .sheetio import canonical_dumps


class InvarianceError(ValueError):
    """Raised for invalid viewing parameters, images, or degenerate sizes."""


#: 96 px per inch over 2.54 cm per inch; overridable everywhere it is used.
DEFAULT_PPCM = Fraction(189, 5)

#: Downscale factors, harshest last; labels keep the x/5 spelling for captions.
SCALE_FACTORS: tuple[Fraction, ...] = (
    Fraction(5, 5), Fraction(4, 5), Fraction(3, 5), Fraction(2, 5), Fraction(1, 5)
)
_SCALE_LABELS = ("5/5", "4/5", "3/5", "2/5", "1/5")

#: (brightness sign, contrast sign) per grid row.
SIGN_ROWS: tuple[tuple[int, int], ...] = ((1, 1), (1, -1), (-1, 1), (-1, -1))

CALIBRATION_CM = Fraction(4)

_PAD_CM = Fraction(1, 2)
_CAPTION_H = 16  # pixel strip under each cell for the parameter caption


@dataclass(frozen=True)
class ViewingGeometry:
    vf_deg: Fraction = Fraction(5)
    vd_cm: Fraction = Fraction(50)
    shape: str = "circular"

    def __post_init__(self) -> None:
        object.__setattr__(self, "vf_deg", frac(self.vf_deg))
        object.__setattr__(self, "vd_cm", frac(self.vd_cm))
        if not (0 < self.vf_deg < 90):
            raise InvarianceError("vf_deg must lie in (0, 90)")
        if self.vd_cm <= 0:
            raise InvarianceError("vd_cm must be positive")
        if self.shape not in ("circular", "rectangular"):
            raise InvarianceError(f"shape must be circular or rectangular, not {self.shape!r}")


def viewing_area(geom: ViewingGeometry) -> tuple[float, float]:
    """(l_diam_cm, l_edge_cm): circle diameter and inscribed-square edge."""
    l_diam = 2.0 * float(geom.vd_cm) * math.tan(math.radians(float(geom.vf_deg)) / 2.0)
    return l_diam, l_diam / math.sqrt(2.0)


def scale_series(base_cm, factors: Sequence = SCALE_FACTORS) -> list[float]:
    """base x factor for each factor, largest first."""
    base = float(base_cm)
    if base <= 0:
        raise InvarianceError("base size must be positive")
    ordered = sorted((frac(f) for f in factors), reverse=True)
    if not ordered:
        raise InvarianceError("need at least one scale factor")
    if any(f <= 0 for f in ordered):
        raise InvarianceError("scale factors must be positive")
    return [base * float(f) for f in ordered]


# --- colorimetry transfer ------------------------------------------------------

@dataclass(frozen=True)
class ColorimetryParams:
    kappa_ctr: Fraction = Fraction(0)
    kappa_brt: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa_ctr", frac(self.kappa_ctr))
        object.__setattr__(self, "kappa_brt", frac(self.kappa_brt))
        if not (-255 <= self.kappa_ctr <= 255):
            raise InvarianceError("kappa_ctr must lie in [-255, 255]")
        if not (-255 <= self.kappa_brt <= 255):
            raise InvarianceError("kappa_brt must lie in [-255, 255]")


def contrast_factor(kappa_ctr) -> Fraction:
    """259(k + 255) / (255(259 - k)); positive over the whole parameter range."""
    k = frac(kappa_ctr)
    return Fraction(259) * (k + 255) / (Fraction(255) * (259 - k))


def colorimetry_transform(x: int, params: ColorimetryParams) -> int:
    """Shift one channel value: contrast stretch about 128, then brightness.

    Evaluated exactly, rounded half-up, clamped to [0, 255]. Alpha channels
    are never passed through here; they stay untouched by design.
    """
    if isinstance(x, bool) or not isinstance(x, int) or not (0 <= x <= 255):
        raise InvarianceError("channel value must be an integer in [0, 255]")
    value = contrast_factor(params.kappa_ctr) * (x - 128) + 128 + params.kappa_brt
    rounded = int(round_half_up(value, 0))
    return max(0, min(255, rounded))


def transform_lut(params: ColorimetryParams) -> list[int]:
    """The transform tabulated over all 256 channel values."""
    return [colorimetry_transform(x, params) for x in range(256)]


def apply_colorimetry(image: Image.Image, params: ColorimetryParams) -> Image.Image:
    """Apply the transform to RGB; alpha passes through unchanged."""
    rgba = image.convert("RGBA")
    pixels = np.asarray(rgba)
    lut = np.asarray(transform_lut(params), dtype=np.uint8)
    out = pixels.copy()
    out[..., :3] = lut[pixels[..., :3]]
    return Image.fromarray(out, mode="RGBA")


# --- sheet plumbing -------------------------------------------------------------

@dataclass(frozen=True)
class DegradationSheet:
    """A composite raster plus a manifest describing every cell."""

    composite: Image.Image
    manifest: dict

    def manifest_text(self) -> str:
        return canonical_dumps(self.manifest)

    def png_bytes(self) -> bytes:
        buffer = io.BytesIO()
        self.composite.save(buffer, format="PNG")
        return buffer.getvalue()

    def save(self, image_path, manifest_path=None) -> tuple[Path, Path]:
        image_path = Path(image_path)
        if manifest_path is None:
            manifest_path = image_path.with_suffix(".manifest.json")
        else:
            manifest_path = Path(manifest_path)
        image_path.write_bytes(self.png_bytes())
        manifest_path.write_text(self.manifest_text(), encoding="utf-8")
        return image_path, manifest_path


def open_image(source) -> Image.Image:
    """Load a raster from a path or PNG bytes; errors become InvarianceError."""
    try:
        if isinstance(source, (bytes, bytearray)):
            image = Image.open(io.BytesIO(source))
        else:
            image = Image.open(source)
        image.load()
    except (UnidentifiedImageError, OSError) as exc:
        raise InvarianceError(f"cannot read image: {exc}") from exc
    if image.width < 1 or image.height < 1:
        raise InvarianceError("image is empty")
    return image


def _px(value: Fraction) -> int:
    return int(round_half_up(value, 0))


_FONT = ImageFont.load_default()


def _caption(draw: ImageDraw.ImageDraw, x: int, y: int, text: str) -> None:
    draw.text((x, y), text, fill=(0, 0, 0), font=_FONT)


def _paste(sheet: Image.Image, cell: Image.Image, x: int, y: int) -> None:
    sheet.paste(cell, (x, y), cell)


def geometry_sheet(
    image: Image.Image,
    geom: Optional[ViewingGeometry] = None,
    ppcm=DEFAULT_PPCM,
) -> DegradationSheet:
    """Five rescaled renderings, largest first, plus the calibration square.

    The controlling dimension (image width for circular glyphs, the shorter
    side for rectangular ones) is matched to each series size; the other side
    follows the locked aspect ratio. Downscaling area-averages.
    """
    geom = geom if geom is not None else ViewingGeometry()
    ppcm = frac(ppcm)
    if ppcm <= 0:
        raise InvarianceError("ppcm must be positive")
    l_diam, l_edge = viewing_area(geom)
    base_cm = l_diam if geom.shape == "circular" else l_edge
    sizes_cm = scale_series(base_cm)
    src = image.convert("RGBA")
    src_w, src_h = src.size
    width_controls = geom.shape == "circular" or src_w <= src_h
    controlling_src = src_w if width_controls else src_h

    cells = []
    for label, size_cm in zip(_SCALE_LABELS, sizes_cm):
        target = _px(frac(size_cm) * ppcm)
        if target < 1:
            raise InvarianceError(
                f"scale {label} yields a {target} px cell at {format_minimal(ppcm)} px/cm; "
                "increase ppcm or the viewing size"
            )
        other_src = src_h if width_controls else src_w
        other = max(1, _px(Fraction(other_src * target, controlling_src)))
        cell_w, cell_h = (target, other) if width_controls else (other, target)
        cells.append((label, size_cm, src.resize((cell_w, cell_h), Image.BOX)))

    calib_px = _px(CALIBRATION_CM * ppcm)
    pad = max(4, _px(_PAD_CM * ppcm))
    row_h = max(max(c.height for _, _, c in cells), calib_px)
    sheet_w = pad + sum(c.width + pad for _, _, c in cells) + calib_px + pad
    sheet_h = pad + row_h + _CAPTION_H + pad
    sheet = Image.new("RGB", (sheet_w, sheet_h), (255, 255, 255))
    draw = ImageDraw.Draw(sheet)

    manifest_cells = []
    x = pad
    for index, (label, size_cm, cell) in enumerate(cells):
        y = pad + (row_h - cell.height) // 2
        _paste(sheet, cell, x, y)
        _caption(draw, x, pad + row_h + 2, f"{label}  {size_cm:.2f}cm  {cell.width}x{cell.height}px")
        manifest_cells.append(
            {
                "index": index,
                "scale": label,
                "size_cm": f"{size_cm:.2f}",
                "width_px": cell.width,
                "height_px": cell.height,
                "x": x,
                "y": y,
            }
        )
        x += cell.width + pad

    calib_y = pad + (row_h - calib_px) // 2
    draw.rectangle([x, calib_y, x + calib_px - 1, calib_y + calib_px - 1], outline=(0, 0, 0))
    _caption(draw, x, pad + row_h + 2, f"4x4cm  {calib_px}px")
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": "geometry",
        "shape": geom.shape,
        "vf_deg": format_minimal(geom.vf_deg),
        "vd_cm": format_minimal(geom.vd_cm),
        "ppcm": format_minimal(ppcm),
        "base_cm": f"{base_cm:.4f}",
        "cells": manifest_cells,
        "calibration_square": {
            "size_cm": format_minimal(CALIBRATION_CM),
            "size_px": calib_px,
            "x": x,
            "y": calib_y,
        },
    }
    return DegradationSheet(composite=sheet, manifest=manifest)


def colorimetry_sheet(image: Image.Image) -> DegradationSheet:
    """4x5 grid: column one untouched, columns 2-5 at growing magnitudes with
    the four (brightness, contrast) sign combinations down the rows."""
    src = image.convert("RGBA")
    cell_w, cell_h = src.size
    pad = 12
    cols = 1 + len(COLORIMETRY_MAGNITUDES)
    rows = len(SIGN_ROWS)
    sheet_w = pad + cols * (cell_w + pad)
    sheet_h = pad + rows * (cell_h + _CAPTION_H + pad)
    sheet = Image.new("RGB", (sheet_w, sheet_h), (255, 255, 255))
    draw = ImageDraw.Draw(sheet)

    manifest_cells = []
    index = 0
    for row, (brt_sign, ctr_sign) in enumerate(SIGN_ROWS):
        y = pad + row * (cell_h + _CAPTION_H + pad)
        for col in range(cols):
            x = pad + col * (cell_w + pad)
            if col == 0:
                params = ColorimetryParams(Fraction(0), Fraction(0))
                cell = src
                caption = "original"
            else:
                magnitude = COLORIMETRY_MAGNITUDES[col - 1]
                params = ColorimetryParams(
                    kappa_ctr=ctr_sign * magnitude, kappa_brt=brt_sign * magnitude
                )
                cell = apply_colorimetry(src, params)
                caption = (
                    f"brt {'+' if brt_sign > 0 else '-'}{format_minimal(magnitude)}"
                    f"  ctr {'+' if ctr_sign > 0 else '-'}{format_minimal(magnitude)}"
                )
            _paste(sheet, cell, x, y)
            _caption(draw, x, y + cell_h + 2, caption)
            manifest_cells.append(
                {
                    "index": index,
                    "row": row,
                    "col": col,
                    "kappa_ctr": format_minimal(params.kappa_ctr),
                    "kappa_brt": format_minimal(params.kappa_brt),
                    "x": x,
                    "y": y,
                    "width_px": cell_w,
                    "height_px": cell_h,
                }
            )
            index += 1

    manifest = {
        "schema_version": SCHEMA_VERSION,
        "kind": "colorimetry",
        "magnitudes": [format_minimal(m) for m in COLORIMETRY_MAGNITUDES],
        "sign_rows": [
            {"kappa_brt": "+" if b > 0 else "-", "kappa_ctr": "+" if c > 0 else "-"}
            for b, c in SIGN_ROWS
        ],
        "cells": manifest_cells,
    }
    return DegradationSheet(composite=sheet, manifest=manifest)
