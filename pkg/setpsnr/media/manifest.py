# -*- coding: utf-8 -*-
"""
Dataset manifests: JSON documents listing reference / distorted media pairs together
with the channel and quantization settings under which the MSE is computed.

Example::

    {
      "mode": "video_set",
      "channel_mode": "y_bt601_studio",
      "quantization": "uint8",
      "clamp": false,
      "items": [
        {"ref": "ref/beauty.yuv", "dist": "h264/beauty.yuv", "video": "beauty",
         "width": 1920, "height": 1080, "subsampling": "420"}
      ]
    }

Paths are relative to the manifest file. Raw YUV entries without a ``frame`` field
stand for all frames of the file.

(c) setpsnr developers; This work is licensed under a Creative Commons
Attribution-NonCommercial-NoDerivs 2.0 UK: England & Wales License.

"""
import os
import json
import logging
from collections import OrderedDict
from typing import Optional, List, Dict, Any

from setpsnr.media.buffers import ManifestError, SUBSAMPLINGS
from setpsnr.media.yuv import count_file_frames

logger = logging.getLogger(__name__)

IMAGE_SET = "image_set"
SINGLE_VIDEO = "single_video"
VIDEO_SET = "video_set"
SIMULATE = "simulate"
MODES = (IMAGE_SET, SINGLE_VIDEO, VIDEO_SET, SIMULATE)
VIDEO_MODES = (SINGLE_VIDEO, VIDEO_SET)

CHANNEL_MODES = ("rgb", "y_bt601_studio", "y_full_range")
QUANTIZATIONS = ("float01", "uint8")

DEFAULT_CHANNEL_MODE = "y_bt601_studio"
DEFAULT_QUANTIZATION = "uint8"
DEFAULT_VIDEO_ID = "video"

_ITEM_KEYS = ("id", "ref", "dist", "video", "width", "height", "subsampling", "frame")
_SETTING_KEYS = ("channel_mode", "quantization", "clamp")


class ManifestItem:
    """
    One reference / distorted pair.

    :param ref: Path of the reference image or raw video.
    :param dist: Path of the distorted image or raw video.
    :param video: Video id the pair belongs to, if any.
    :param width: Frame width for raw YUV input.
    :param height: Frame height for raw YUV input.
    :param subsampling: '420' or '444' for raw YUV input.
    :param frame: Frame index inside a raw YUV file. ``None`` means all frames.
    :param item_id: Identifier used in reports. Defaults to the distorted path, with
        the frame index appended for raw frames.
    """

    def __init__(
        self,
        ref: str,
        dist: str,
        video: Optional[str] = None,
        width: Optional[int] = None,
        height: Optional[int] = None,
        subsampling: Optional[str] = None,
        frame: Optional[int] = None,
        item_id: Optional[str] = None,
    ) -> None:

        self.ref = ref
        self.dist = dist
        self.video = video
        self.width = width
        self.height = height
        self.subsampling = subsampling
        self.frame = frame
        self._item_id = item_id

    @property
    def item_id(self) -> str:
        if self._item_id:
            return self._item_id
        if self.frame is not None:
            return "{0}#{1}".format(self.dist, self.frame)
        return self.dist

    @property
    def is_raw(self) -> bool:
        """``True`` for headerless YUV input."""
        return self.width is not None or self.dist.lower().endswith(".yuv")

    @property
    def geometry(self):
        return self.width, self.height, self.subsampling

    def to_dict(self) -> Dict[str, Any]:
        d = OrderedDict()
        if self._item_id:
            d["id"] = self._item_id
        d["ref"] = self.ref
        d["dist"] = self.dist
        for key in ("video", "width", "height", "subsampling", "frame"):
            value = getattr(self, key)
            if value is not None:
                d[key] = value
        return d

    def __repr__(self) -> str:
        return "<{0}(id={1!r}, video={2!r})>".format(
            self.__class__.__name__, self.item_id, self.video
        )


class Manifest:
    """
    Validated dataset manifest.

    :param mode: One of 'image_set', 'single_video', 'video_set' or 'simulate'.
    :param items: Ordered list of :class:`ManifestItem`.
    :param channel_mode: 'rgb', 'y_bt601_studio' or 'y_full_range'.
    :param quantization: 'float01' or 'uint8'.
    :param clamp: Clamp float samples to [0, 1].
    :param base_dir: Directory relative paths are resolved against.
    :param simulation: Optional simulation settings for 'simulate' manifests.
    """

    def __init__(
        self,
        mode: str,
        items: List[ManifestItem],
        channel_mode: str = DEFAULT_CHANNEL_MODE,
        quantization: str = DEFAULT_QUANTIZATION,
        clamp: bool = False,
        base_dir: str = "",
        simulation: Optional[Dict[str, Any]] = None,
    ) -> None:

        self.mode = mode
        self.items = list(items)
        self.channel_mode = channel_mode
        self.quantization = quantization
        self.clamp = clamp
        self.base_dir = base_dir
        self.simulation = simulation

        self._validate()

    def _validate(self) -> None:

        _check_enum("mode", self.mode, MODES)
        _check_enum("channel_mode", self.channel_mode, CHANNEL_MODES)
        _check_enum("quantization", self.quantization, QUANTIZATIONS)

        if not isinstance(self.clamp, bool):
            raise ManifestError("'clamp' must be true or false.")

        if self.mode == SIMULATE:
            return

        if not self.items:
            raise ManifestError("Manifest lists no items.")

        for index, item in enumerate(self.items):
            if item.is_raw and None in item.geometry:
                raise ManifestError(
                    "Item {0} ({1}) is raw video but lacks width, height or "
                    "subsampling.".format(index, item.item_id)
                )
            if item.subsampling is not None and item.subsampling not in SUBSAMPLINGS:
                raise ManifestError(
                    "Item {0}: unknown subsampling '{1}'.".format(
                        index, item.subsampling
                    )
                )
            if self.mode == VIDEO_SET and item.video is None:
                raise ManifestError(
                    "Item {0} ({1}) has no video id.".format(index, item.item_id)
                )

        if self.mode == SINGLE_VIDEO:
            ids = {item.video for item in self.items}
            if len(ids) > 1:
                raise ManifestError(
                    "A single_video manifest must not mix video ids: %s"
                    % sorted(str(i) for i in ids)
                )

        if self.mode in VIDEO_MODES:
            for video_id, items in self.videos().items():
                geometries = {item.geometry for item in items if item.is_raw}
                if len(geometries) > 1:
                    raise ManifestError(
                        "Frames of video '{0}' declare different geometries.".format(
                            video_id
                        )
                    )

    def video_id(self, item: ManifestItem) -> Optional[str]:
        """Video id of ``item``; single videos default to 'video'."""
        if self.mode == SINGLE_VIDEO:
            return item.video or DEFAULT_VIDEO_ID
        return item.video

    def videos(self) -> "OrderedDict[str, List[ManifestItem]]":
        """Items grouped by video id, both in order of first appearance."""
        groups = OrderedDict()
        for item in self.items:
            groups.setdefault(self.video_id(item), []).append(item)
        return groups

    def resolve(self, path: str) -> str:
        """Resolves a path from the manifest against :attr:`base_dir`."""
        path = os.path.expanduser(path)
        if os.path.isabs(path):
            return path
        return os.path.join(self.base_dir, path)

    def expand_raw_items(self) -> "Manifest":
        """
        Returns a manifest in which every raw YUV entry without a frame index is
        replaced by one entry per frame. The frame count is taken from the size of the
        distorted file; the reference must hold at least as many frames.
        """
        expanded = []
        for item in self.items:
            if not item.is_raw or item.frame is not None:
                expanded.append(item)
                continue

            n_frames = count_file_frames(self.resolve(item.dist), *item.geometry)
            logger.debug("Expanding '%s' into %s frames.", item.dist, n_frames)

            for frame in range(n_frames):
                expanded.append(
                    ManifestItem(
                        item.ref,
                        item.dist,
                        item.video,
                        item.width,
                        item.height,
                        item.subsampling,
                        frame,
                        "{0}#{1}".format(item._item_id, frame)
                        if item._item_id
                        else None,
                    )
                )

        return Manifest(
            self.mode,
            expanded,
            self.channel_mode,
            self.quantization,
            self.clamp,
            self.base_dir,
            self.simulation,
        )

    def override(self, **settings) -> "Manifest":
        """
        Returns a copy with the given settings replaced. ``None`` values keep the
        manifest value.

        :param settings: Any of 'channel_mode', 'quantization' and 'clamp'.
        """
        unknown = set(settings) - set(_SETTING_KEYS)
        if unknown:
            raise ValueError("Unknown manifest settings {}.".format(sorted(unknown)))

        values = {key: getattr(self, key) for key in _SETTING_KEYS}
        values.update((k, v) for k, v in settings.items() if v is not None)

        return Manifest(
            self.mode,
            self.items,
            base_dir=self.base_dir,
            simulation=self.simulation,
            **values
        )

    def to_dict(self) -> Dict[str, Any]:
        d = OrderedDict()
        d["mode"] = self.mode
        d["channel_mode"] = self.channel_mode
        d["quantization"] = self.quantization
        d["clamp"] = self.clamp
        if self.simulation is not None:
            d["simulation"] = self.simulation
        d["items"] = [item.to_dict() for item in self.items]
        return d

    def __len__(self) -> int:
        return len(self.items)

    def __repr__(self) -> str:
        return "<{0}(mode={1}, {2} items)>".format(
            self.__class__.__name__, self.mode, len(self.items)
        )


def _check_enum(name: str, value, allowed) -> None:
    if value not in allowed:
        raise ManifestError(
            "Unknown {0} {1!r}, expected one of {2}.".format(name, value, allowed)
        )


def load_manifest(
    text: str, base_dir: str = "", defaults: Optional[Dict[str, Any]] = None
) -> Manifest:
    """
    Parses and validates a manifest document.

    :param text: JSON document.
    :param base_dir: Directory relative media paths are resolved against.
    :param defaults: Values for 'channel_mode', 'quantization' and 'clamp' used when
        the document does not set them. Falls back to the built-in defaults.
    :returns: :class:`Manifest` with items in document order.
    :raises: :class:`ManifestError` for unknown enum values, missing items or missing
        raw video geometry.
    """
    try:
        doc = json.loads(text, object_pairs_hook=OrderedDict)
    except ValueError as exc:
        raise ManifestError("Manifest is not valid JSON: {}".format(exc))

    if not isinstance(doc, dict):
        raise ManifestError("Manifest must be a JSON object.")
    if "mode" not in doc:
        raise ManifestError("Manifest has no 'mode'.")

    items = []

    for index, entry in enumerate(doc.get("items", [])):
        if not isinstance(entry, dict):
            raise ManifestError("Item {} is not an object.".format(index))
        unknown = set(entry) - set(_ITEM_KEYS)
        if unknown:
            raise ManifestError(
                "Item {0} has unknown keys {1}.".format(index, sorted(unknown))
            )
        if "ref" not in entry or "dist" not in entry:
            raise ManifestError("Item {} needs both 'ref' and 'dist'.".format(index))

        items.append(
            ManifestItem(
                ref=entry["ref"],
                dist=entry["dist"],
                video=None if entry.get("video") is None else str(entry["video"]),
                width=entry.get("width"),
                height=entry.get("height"),
                subsampling=None
                if entry.get("subsampling") is None
                else str(entry["subsampling"]),
                frame=entry.get("frame"),
                item_id=entry.get("id"),
            )
        )

    settings = {
        "channel_mode": DEFAULT_CHANNEL_MODE,
        "quantization": DEFAULT_QUANTIZATION,
        "clamp": False,
    }
    settings.update(defaults or {})
    settings.update((key, doc[key]) for key in _SETTING_KEYS if key in doc)

    return Manifest(
        mode=doc["mode"],
        items=items,
        channel_mode=settings["channel_mode"],
        quantization=settings["quantization"],
        clamp=settings["clamp"],
        base_dir=base_dir,
        simulation=doc.get("simulation"),
    )


def dump_manifest(manifest: Manifest) -> str:
    """Serialises a manifest back to JSON, preserving item order."""
    return json.dumps(manifest.to_dict(), indent=2)


def read_manifest(path: str, defaults: Optional[Dict[str, Any]] = None) -> Manifest:
    """
    Loads the manifest at ``path``. Media paths resolve relative to its folder.
    ``defaults`` are passed on to :func:`load_manifest`.
    """
    path = os.path.expanduser(path)
    with open(path, "r", encoding="utf-8") as f:
        text = f.read()
    base_dir = os.path.dirname(os.path.abspath(path))
    return load_manifest(text, base_dir=base_dir, defaults=defaults)
