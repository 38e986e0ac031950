import zstandard

ZSTD_LEVEL = 5
# Fixed cost of an empty Zstandard frame, removed so short texts compare fairly.
FRAME_OVERHEAD = 24


def compressed_size(text: str) -> int:
    """Zstandard level-5 frame size of the UTF-8 text, minus the frame overhead, floored at 1."""
    # compressor objects are not safe to share between threads
    compressor = zstandard.ZstdCompressor(level=ZSTD_LEVEL)
    return max(1, len(compressor.compress(text.encode("utf-8"))) - FRAME_OVERHEAD)
