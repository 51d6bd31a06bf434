"""Exercise the HTTP session API end to end against a live server.

Boots the service in a background thread on a loopback port (the same app the
``learnext serve`` command runs), then drives a session over real HTTP with
nothing but the standard library: create a session, fetch materials, post
understand/not-understand responses, and read back the state snapshot.

Run:  python demos/04_service_walkthrough.py
"""

import json
import tempfile
import threading
import time
import urllib.request
from importlib import resources

import uvicorn

from learnext import build_graph, load_corpus
from learnext.service import create_app

corpus_path = resources.files("learnext").joinpath("data/sample_corpus.jsonl")
corpus = load_corpus(str(corpus_path))
graph = build_graph(corpus)

store = tempfile.mkdtemp(prefix="learnext-demo-")
app = create_app(graph, corpus, store)
server = uvicorn.Server(
    uvicorn.Config(app, host="127.0.0.1", port=8765, log_level="error")
)
thread = threading.Thread(target=server.run, daemon=True)
thread.start()
while not server.started:
    time.sleep(0.05)
base = "http://127.0.0.1:8765"


def call(method: str, path: str, body: dict | None = None) -> dict:
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method,
        headers={"Content-Type": "application/json"},
    )
    with urllib.request.urlopen(req) as resp:
        return json.loads(resp.read())


print("graph stats:", call("GET", "/graph/stats"))

session = call("POST", "/sessions", {"mode": "adaptive", "m": 6, "seed": 3})
sid = session["session_id"]
print(f"session {sid[:8]}... mode={session['mode']} seed={session['seed']}\n")

# answer policy for the demo: rainy-day vocabulary yes, travel vocabulary no
knows = {"rain", "umbrella", "station", "food", "market", "price"}
for _ in range(len(corpus)):
    nxt = call("GET", f"/sessions/{sid}/next")
    if nxt.get("complete"):
        print("\nsession complete:", nxt["summary"]["counts"])
        break
    material = corpus[nxt["material_id"]]
    share = len(material.distinct_concepts & knows) / len(material.distinct_concepts)
    understood = share >= 0.8
    print(
        f"[{nxt['heuristic']:<14}] {nxt['material_id']} {nxt['title']!r} "
        f"-> {'understood' if understood else 'not understood'}"
    )
    call(
        "POST",
        f"/sessions/{sid}/response",
        {"material_id": nxt["material_id"], "understood": understood},
    )

state = call("GET", f"/sessions/{sid}/state")
print("\nfinal counts:", state["counts"])
print(f"session log persisted under {store}")

server.should_exit = True
thread.join(timeout=5)
