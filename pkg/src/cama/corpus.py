"""In-memory listener/song/artist corpus and its JSON Lines file format.

Two files make up a corpus::

    playlists.jsonl   {"listener": "L1", "songs": ["S1", "S2", ...]}
    songs.jsonl       {"song": "S1", "artists": ["A1", "A3"]}

Source string ids are re-indexed densely on load: listeners in playlist-file
order, songs in catalog-file order, artists in order of first appearance in
the catalog file.  The string ids are kept on the corpus for output.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

PLAYLIST_KEYS = frozenset({"listener", "songs"})
SONG_KEYS = frozenset({"song", "artists"})


class CorpusError(ValueError):
    """Raised when corpus data fails validation."""


class CorpusParseError(CorpusError):
    def __init__(self, path: Path | str, lineno: int, message: str):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


@dataclass(frozen=True)
class Corpus:
    """Densely indexed playlists and song artist sets.

    ``playlists[l]`` is the ordered song history of listener ``l``;
    ``song_artists[s]`` is the ascending tuple of artist ids of song ``s``.
    """

    playlists: tuple[tuple[int, ...], ...]
    song_artists: tuple[tuple[int, ...], ...]
    listener_ids: tuple[str, ...]
    song_ids: tuple[str, ...]
    artist_ids: tuple[str, ...]

    def __post_init__(self) -> None:
        n, m, a = len(self.listener_ids), len(self.song_ids), len(self.artist_ids)
        if n < 1:
            raise CorpusError("corpus has no listeners")
        if m < 1:
            raise CorpusError("corpus has no songs")
        if len(self.playlists) != n:
            raise CorpusError(f"{len(self.playlists)} playlists for {n} listeners")
        if len(self.song_artists) != m:
            raise CorpusError(f"{len(self.song_artists)} artist lists for {m} songs")
        for kind, ids in (("listener", self.listener_ids), ("song", self.song_ids), ("artist", self.artist_ids)):
            if len(set(ids)) != len(ids):
                raise CorpusError(f"duplicate {kind} id")
        for s, artists in enumerate(self.song_artists):
            if not artists:
                raise CorpusError(f"song {self.song_ids[s]!r} has no artists")
            if len(set(artists)) != len(artists):
                raise CorpusError(f"song {self.song_ids[s]!r} lists an artist twice")
            if any(not 0 <= x < a for x in artists):
                raise CorpusError(f"song {self.song_ids[s]!r} references an unknown artist index")
        for l, songs in enumerate(self.playlists):
            if len(set(songs)) != len(songs):
                raise CorpusError(f"listener {self.listener_ids[l]!r} has a duplicate song")
            if any(not 0 <= s < m for s in songs):
                raise CorpusError(f"listener {self.listener_ids[l]!r} references an unknown song index")

    @property
    def n(self) -> int:
        return len(self.listener_ids)

    @property
    def m(self) -> int:
        return len(self.song_ids)

    @property
    def a(self) -> int:
        return len(self.artist_ids)

    def listener_index(self, listener_id: str) -> int:
        try:
            return self.listener_ids.index(listener_id)
        except ValueError:
            raise CorpusError(f"unknown listener {listener_id!r}") from None

    def with_playlists(self, playlists: Sequence[Sequence[int]]) -> Corpus:
        """Same catalog and id tables, different listening histories."""
        return Corpus(
            playlists=tuple(tuple(p) for p in playlists),
            song_artists=self.song_artists,
            listener_ids=self.listener_ids,
            song_ids=self.song_ids,
            artist_ids=self.artist_ids,
        )

    def logical(self) -> tuple[dict[str, tuple[str, ...]], dict[str, frozenset[str]]]:
        """Index-free view used for equality up to id remapping."""
        playlists = {
            self.listener_ids[l]: tuple(self.song_ids[s] for s in songs)
            for l, songs in enumerate(self.playlists)
        }
        catalog = {
            self.song_ids[s]: frozenset(self.artist_ids[x] for x in artists)
            for s, artists in enumerate(self.song_artists)
        }
        return playlists, catalog

    @classmethod
    def from_records(
        cls,
        playlists: Iterable[tuple[str, Sequence[str]]],
        songs: Iterable[tuple[str, Sequence[str]]],
    ) -> Corpus:
        """Build a corpus from ``(listener, [song, ...])`` and ``(song, [artist, ...])`` pairs."""
        song_index: dict[str, int] = {}
        artist_index: dict[str, int] = {}
        song_artists = []
        for song, artists in songs:
            if song in song_index:
                raise CorpusError(f"duplicate song {song!r} in catalog")
            if not artists:
                raise CorpusError(f"song {song!r} has an empty artist list")
            if len(set(artists)) != len(artists):
                raise CorpusError(f"song {song!r} lists an artist twice")
            song_index[song] = len(song_index)
            ids = [artist_index.setdefault(x, len(artist_index)) for x in artists]
            song_artists.append(tuple(sorted(ids)))

        listener_ids: list[str] = []
        seen: set[str] = set()
        dense_playlists = []
        for listener, history in playlists:
            if listener in seen:
                raise CorpusError(f"duplicate listener {listener!r}")
            seen.add(listener)
            if len(set(history)) != len(history):
                dup = next(s for s in history if list(history).count(s) > 1)
                raise CorpusError(f"listener {listener!r} has song {dup!r} twice")
            for s in history:
                if s not in song_index:
                    raise CorpusError(f"listener {listener!r} references unknown song {s!r}")
            listener_ids.append(listener)
            dense_playlists.append(tuple(song_index[s] for s in history))

        return cls(
            playlists=tuple(dense_playlists),
            song_artists=tuple(song_artists),
            listener_ids=tuple(listener_ids),
            song_ids=tuple(song_index),
            artist_ids=tuple(artist_index),
        )


def _read_jsonl(path: Path, keys: frozenset[str], id_key: str, list_key: str) -> list[tuple[str, list[str]]]:
    try:
        text = path.read_bytes().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusParseError(path, _line_of(exc), "invalid UTF-8") from None
    lines = text.split("\n")
    if lines[-1] == "":
        lines.pop()  # trailing newline
    records = []
    for lineno, line in enumerate(lines, start=1):
        if "\r" in line:
            raise CorpusParseError(path, lineno, "CR line ending")
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CorpusParseError(path, lineno, f"malformed JSON ({exc.msg})") from None
        if not isinstance(obj, dict):
            raise CorpusParseError(path, lineno, "record is not an object")
        if set(obj) != keys:
            unknown = sorted(set(obj) - keys)
            missing = sorted(keys - set(obj))
            detail = f"unknown keys {unknown}" if unknown else f"missing keys {missing}"
            raise CorpusParseError(path, lineno, detail)
        ident, items = obj[id_key], obj[list_key]
        if not isinstance(ident, str):
            raise CorpusParseError(path, lineno, f"{id_key!r} must be a string")
        if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
            raise CorpusParseError(path, lineno, f"{list_key!r} must be a list of strings")
        if not items:
            raise CorpusParseError(path, lineno, f"{list_key!r} is empty")
        records.append((ident, items))
    return records


def _line_of(exc: UnicodeDecodeError) -> int:
    return exc.object[: exc.start].count(b"\n") + 1


def load_corpus(playlists_path: str | Path, songs_path: str | Path) -> Corpus:
    """Parse and validate the two corpus files.

    Raises :class:`CorpusParseError` (with line number) for malformed lines and
    :class:`CorpusError` for cross-record violations such as a playlist that
    names a song missing from the catalog.
    """
    songs = _read_jsonl(Path(songs_path), SONG_KEYS, "song", "artists")
    playlists = _read_jsonl(Path(playlists_path), PLAYLIST_KEYS, "listener", "songs")
    return Corpus.from_records(playlists, songs)


def save_corpus(corpus: Corpus, playlists_path: str | Path, songs_path: str | Path) -> None:
    for l, songs in enumerate(corpus.playlists):
        if not songs:
            raise CorpusError(f"listener {corpus.listener_ids[l]!r} has an empty playlist")
    with open(songs_path, "w", encoding="utf-8", newline="\n") as f:
        for s, artists in enumerate(corpus.song_artists):
            rec = {"song": corpus.song_ids[s], "artists": [corpus.artist_ids[x] for x in artists]}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
    with open(playlists_path, "w", encoding="utf-8", newline="\n") as f:
        for l, songs in enumerate(corpus.playlists):
            rec = {"listener": corpus.listener_ids[l], "songs": [corpus.song_ids[s] for s in songs]}
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")
