"""Synthetic corpora and a local fixture web server for offline tests."""

import html
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

import numpy as np

from veridict.corpus import Label, NewsRecord, Dataset

SHARED = [f"common{i}" for i in range(30)]


def class_vocab(label, size=40):
    stem = "faketerm" if label == Label.FAKE else "realterm"
    return [f"{stem}{i}" for i in range(size)]


def make_article(rng, label, n_words=60, noise=0.0, vocab_size=40):
    """Words from the class vocabulary, the shared pool, and (with
    probability ``noise``) the opposite class."""
    own = class_vocab(label, vocab_size)
    other = class_vocab(Label(1 - int(label)), vocab_size)
    words = []
    for _ in range(n_words):
        u = rng.random()
        if u < noise:
            words.append(other[rng.integers(len(other))])
        elif u < 0.5:
            words.append(SHARED[rng.integers(len(SHARED))])
        else:
            words.append(own[rng.integers(len(own))])
    title = " ".join(words[:6]).capitalize()
    return title, " ".join(words) + "."


def make_corpus(n=500, seed=0, noise=0.0, vocab_size=40, start_id=0, origin="seed-corpus"):
    rng = np.random.default_rng(seed)
    records = []
    for i in range(n):
        label = Label(i % 2)
        title, text = make_article(rng, label, int(rng.integers(40, 90)), noise, vocab_size)
        records.append(NewsRecord(id=str(start_id + i), title=title, text=text, label=label, origin=origin))
    return Dataset(tuple(records))


def article_page(title, paragraphs, links=()):
    anchors = "".join(f'<li><a href="{h}">{html.escape(h)}</a></li>' for h in links)
    body = "".join(f"<p>{html.escape(p)}</p>" for p in paragraphs)
    return (
        f"<html><head><title>{html.escape(title)} | Site</title><script>var x = 1;</script></head>"
        f"<body><nav><ul>{anchors}</ul><p>Home About Contact</p></nav>"
        f"<h1>{html.escape(title)}</h1>{body}</body></html>"
    )


def index_page(title, links, blurb="Latest headlines"):
    anchors = "".join(f'<li><a href="{h}">item</a></li>' for h in links)
    return f"<html><head><title>{html.escape(title)}</title></head><body><p>{blurb}</p><ul>{anchors}</ul></body></html>"


class FixtureSite:
    """Serve a dict of ``path -> (status, content_type, body)`` over HTTP on
    localhost and record every request path."""

    def __init__(self, pages):
        self.pages = dict(pages)
        self.requests = []
        site = self

        class Handler(BaseHTTPRequestHandler):
            def do_GET(self):
                site.requests.append(self.path)
                status, ctype, body = site.pages.get(self.path, (404, "text/html", "<h1>Not found</h1>"))
                data = body.encode("utf-8") if isinstance(body, str) else body
                self.send_response(status)
                self.send_header("Content-Type", ctype)
                self.send_header("Content-Length", str(len(data)))
                self.end_headers()
                self.wfile.write(data)

            def log_message(self, *args):
                pass

        self.server = ThreadingHTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.server.serve_forever, args=(0.05,), daemon=True)

    @property
    def base(self):
        return f"http://127.0.0.1:{self.server.server_address[1]}"

    def url(self, path="/"):
        return self.base + path

    def __enter__(self):
        self.thread.start()
        return self

    def __exit__(self, *exc):
        self.server.shutdown()
        self.server.server_close()


def html_ok(body):
    return (200, "text/html; charset=utf-8", body)


def tree_site(article_paths, word_source):
    """Root -> 4 sections -> 2 pages each (13 pages). Pages listed in
    ``article_paths`` carry real article bodies; ``word_source(path)``
    returns ``(title, paragraphs)`` for them."""
    pages = {}
    sections = [f"/s{i}.html" for i in range(4)]
    pages["/"] = html_ok(index_page("Front page", sections + ["mailto:desk@example.org", "http://elsewhere.example/x"]))
    for i, sec in enumerate(sections):
        kids = [f"/s{i}/p{j}.html" for j in range(2)]
        # back-links and duplicates exercise dedup
        links = kids + ["/", kids[0], "/#top"]
        if sec in article_paths:
            title, paras = word_source(sec)
            pages[sec] = html_ok(article_page(title, paras, links))
        else:
            pages[sec] = html_ok(index_page(f"Section {i}", links))
        for kid in kids:
            if kid in article_paths:
                title, paras = word_source(kid)
                pages[kid] = html_ok(article_page(title, paras, ["/", sec]))
            else:
                pages[kid] = html_ok(index_page(f"Listing {kid}", ["/", sec], "Short nav only page"))
    return pages


def outlet_site(articles):
    """Root linking directly to one page per ``(title, text)`` article."""
    paths = [f"/a{i}.html" for i in range(len(articles))]
    pages = {"/": html_ok(index_page("Outlet", paths))}
    for path, (title, text) in zip(paths, articles):
        pages[path] = html_ok(article_page(title, [text]))
    return pages


def make_news_like_corpus(n=600, vocab=30000, doc_len=200, seed=0):
    """Zipf-distributed vocabulary with a mild class skew, giving the wide,
    very sparse TF-IDF matrices typical of real news text."""
    rng = np.random.default_rng(seed)
    ranks = np.arange(1, vocab + 1)
    base = 1.0 / ranks ** 1.05
    records = []
    for i in range(n):
        label = Label(i % 2)
        p = base.copy()
        # each class prefers a disjoint slice of the mid-frequency words
        lo = 200 if label == Label.FAKE else 1200
        p[lo:lo + 1000] *= 8.0
        p /= p.sum()
        idx = rng.choice(vocab, size=doc_len, p=p)
        text = " ".join(f"w{j}" for j in idx)
        records.append(NewsRecord(id=str(i), title=f"story {i}", text=text, label=label))
    return Dataset(tuple(records))
