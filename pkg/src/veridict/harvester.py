"""Recursive same-host crawler and news article extractor."""

from __future__ import annotations

import json
import logging
import re
import threading
import time
import urllib.robotparser
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional
from urllib.parse import urljoin, urlsplit, urlunsplit

import requests
from bs4 import BeautifulSoup

from .errors import (
    ConnectionFailed,
    DnsFailure,
    FetchError,
    HttpError,
    InvalidConfig,
    NotHtml,
    RobotsDisallowed,
    RootUnreachable,
    Timeout,
)
from .features import word_count

log = logging.getLogger(__name__)

USER_AGENT = "veridict-crawler/1.0"
HTML_TYPES = ("text/html", "application/xhtml+xml")
STRIP_TAGS = ("script", "style", "nav", "noscript", "template")
_DEFAULT_PORTS = {"http": 80, "https": 443}
_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class CrawlConfig:
    max_depth: int = 2
    max_pages: int = 600
    same_host_only: bool = True
    fetch_timeout: float = 10.0
    politeness_delay_ms: float = 250.0
    max_concurrent_fetches: int = 8
    min_text_words: int = 30
    respect_robots: bool = True
    log_path: Optional[str] = None

    def __post_init__(self):
        if self.max_depth < 1 or self.max_pages < 1 or self.max_concurrent_fetches < 1:
            raise InvalidConfig("max_depth, max_pages and max_concurrent_fetches must be >= 1")
        if self.fetch_timeout <= 0 or self.politeness_delay_ms < 0:
            raise InvalidConfig("fetch_timeout must be positive and politeness_delay_ms non-negative")


@dataclass(frozen=True)
class ExtractedArticle:
    url: str
    title: str
    text: str

    @property
    def word_count(self) -> int:
        return word_count(self.text)


@dataclass
class CrawlResult:
    links_visited: list = field(default_factory=list)
    articles: list = field(default_factory=list)
    failures: dict = field(default_factory=dict)  # url -> error message


def normalize_url(url: str) -> str:
    """Lowercase scheme and host, drop default ports and the fragment, and
    strip a trailing slash from any path other than the root."""
    parts = urlsplit(url.strip())
    scheme = parts.scheme.lower()
    host = (parts.hostname or "").lower()
    try:
        port = parts.port
    except ValueError:
        port = None
    netloc = host
    if parts.username:
        netloc = f"{parts.username}@{netloc}"
    if port is not None and port != _DEFAULT_PORTS.get(scheme):
        netloc = f"{netloc}:{port}"
    path = parts.path or "/"
    if len(path) > 1 and path.endswith("/"):
        path = path.rstrip("/") or "/"
    return urlunsplit((scheme, netloc, path, parts.query, ""))


def _host(url: str) -> str:
    return urlsplit(url).netloc


class Fetcher:
    """HTTP client with per-host politeness serialization and robots.txt
    handling. Safe to share between worker threads."""

    def __init__(self, config: CrawlConfig = CrawlConfig()):
        self.config = config
        self._local = threading.local()
        self._guard = threading.Lock()
        self._host_locks = {}
        self._last_fetch = {}
        self._robots = {}

    def _session(self) -> requests.Session:
        s = getattr(self._local, "session", None)
        if s is None:
            s = requests.Session()
            s.headers["User-Agent"] = USER_AGENT
            self._local.session = s
        return s

    def _host_lock(self, host: str) -> threading.Lock:
        with self._guard:
            return self._host_locks.setdefault(host, threading.Lock())

    def _allowed(self, url: str) -> bool:
        parts = urlsplit(url)
        key = (parts.scheme, parts.netloc)
        with self._host_lock("robots:" + parts.netloc):
            parser = self._robots.get(key)
            if parser is None:
                parser = urllib.robotparser.RobotFileParser()
                robots_url = urlunsplit((parts.scheme, parts.netloc, "/robots.txt", "", ""))
                try:
                    resp = self._session().get(robots_url, timeout=self.config.fetch_timeout)
                    lines = resp.text.splitlines() if resp.status_code == 200 else []
                except requests.RequestException:
                    lines = []
                parser.parse(lines)
                self._robots[key] = parser
        return parser.can_fetch(USER_AGENT, url)

    def get(self, url: str) -> tuple:
        """Fetch ``url`` and return ``(status, html)``; raise FetchError on failure."""
        if urlsplit(url).scheme not in ("http", "https"):
            raise FetchError(url, "not an http(s) URL")
        if self.config.respect_robots and not self._allowed(url):
            raise RobotsDisallowed(url, "disallowed by robots.txt")
        delay = self.config.politeness_delay_ms / 1000.0
        with self._host_lock(_host(url)):
            wait = self._last_fetch.get(_host(url), -1e9) + delay - time.monotonic()
            if wait > 0:
                time.sleep(wait)
            try:
                resp = self._session().get(url, timeout=self.config.fetch_timeout)
            except requests.Timeout as exc:
                raise Timeout(url, str(exc)) from exc
            except requests.ConnectionError as exc:
                msg = str(exc)
                if any(s in msg for s in ("NameResolution", "Name or service not known",
                                          "getaddrinfo", "Failed to resolve", "nodename nor servname")):
                    raise DnsFailure(url, msg) from exc
                raise ConnectionFailed(url, msg) from exc
            except requests.RequestException as exc:
                raise FetchError(url, str(exc)) from exc
            finally:
                self._last_fetch[_host(url)] = time.monotonic()

        if not 200 <= resp.status_code < 300:
            raise HttpError(url, resp.status_code)
        ctype = resp.headers.get("Content-Type", "")
        if ctype.split(";")[0].strip().lower() not in HTML_TYPES:
            raise NotHtml(url, ctype)
        if "charset" not in ctype.lower():
            return resp.status_code, resp.content.decode("utf-8", errors="replace")
        return resp.status_code, resp.text


def fetch_page(url: str, config: CrawlConfig = CrawlConfig(), fetcher: Optional[Fetcher] = None) -> str:
    fetcher = fetcher or Fetcher(config)
    return fetcher.get(url)[1]


def collect_links(html: str, base: str, config: CrawlConfig = CrawlConfig()) -> list:
    soup = BeautifulSoup(html or "", "html.parser")
    base_host = _host(normalize_url(base))
    seen = set()
    links = []
    for anchor in soup.find_all("a", href=True):
        absolute = urljoin(base, anchor["href"].strip())
        if urlsplit(absolute).scheme.lower() not in ("http", "https"):
            continue
        url = normalize_url(absolute)
        if config.same_host_only and _host(url) != base_host:
            continue
        if url not in seen:
            seen.add(url)
            links.append(url)
    return links


def _clean_text(s: str) -> str:
    return _WS.sub(" ", s).strip()


def extract_article(html: str, url: str, config: CrawlConfig = CrawlConfig()) -> Optional[ExtractedArticle]:
    """Pull a headline and paragraph body out of a page.

    Returns None when the page has no title or its paragraph text falls
    under ``config.min_text_words`` words.
    """
    if not html:
        return None
    soup = BeautifulSoup(html, "html.parser")
    for tag in soup.find_all(STRIP_TAGS):
        tag.decompose()

    title = ""
    h1 = soup.find("h1")
    if h1 is not None:
        title = _clean_text(h1.get_text())
    if not title and soup.title is not None:
        title = _clean_text(soup.title.get_text())
    if not title:
        return None

    paragraphs = [_clean_text(p.get_text()) for p in soup.find_all("p")]
    text = "\n\n".join(p for p in paragraphs if p)
    if word_count(text) < config.min_text_words:
        return None
    return ExtractedArticle(url=url, title=title, text=text)


def crawl_site(root: str, config: CrawlConfig = CrawlConfig(), fetcher: Optional[Fetcher] = None) -> CrawlResult:
    """Breadth-first crawl from ``root`` down to ``config.max_depth``.

    Pages within one depth level are fetched concurrently but processed in
    discovery order, so the visit order and results are deterministic for
    a fixed site.
    """
    fetcher = fetcher or Fetcher(config)
    root = normalize_url(root)
    result = CrawlResult()
    seen = {root}
    frontier = [root]
    depth = 0
    log_fh = open(config.log_path, "a", encoding="utf-8") if config.log_path else None

    def attempt(url):
        try:
            return fetcher.get(url)
        except FetchError as exc:
            return exc

    try:
        with ThreadPoolExecutor(max_workers=config.max_concurrent_fetches) as pool:
            while frontier and len(result.links_visited) < config.max_pages:
                batch = frontier[: config.max_pages - len(result.links_visited)]
                next_frontier = []
                for url, outcome in zip(batch, pool.map(attempt, batch)):
                    result.links_visited.append(url)
                    if isinstance(outcome, FetchError):
                        if url == root:
                            raise RootUnreachable(url, outcome)
                        result.failures[url] = str(outcome)
                        _log(log_fh, url, getattr(outcome, "status", None), f"error: {type(outcome).__name__}")
                        continue
                    status, html = outcome
                    article = extract_article(html, url, config)
                    if article is not None:
                        result.articles.append(article)
                    _log(log_fh, url, status, "article" if article else "no-content")
                    if depth < config.max_depth:
                        for link in collect_links(html, url, config):
                            if link not in seen:
                                seen.add(link)
                                next_frontier.append(link)
                frontier = next_frontier
                depth += 1
    finally:
        if log_fh:
            log_fh.close()
    log.info("crawled %s: %d pages, %d articles", root, len(result.links_visited), len(result.articles))
    return result


def _log(fh, url, status, outcome):
    if fh is not None:
        fh.write(json.dumps({"url": url, "status": status, "outcome": outcome}) + "\n")
