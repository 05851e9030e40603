import { ApiClient } from "./api";
import { mountApp } from "./app";
import { EventSourceLike, PushChannel } from "./push";
import { Store } from "./store";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

// The DOM EventSource matches EventSourceLike at runtime; its handler
// properties are declared with `this`-typed parameters, hence the cast.
const sse = (url: string): EventSourceLike =>
  new EventSource(url) as unknown as EventSourceLike;

mountApp({
  root,
  api: new ApiClient(""),
  push: new PushChannel("/api/events", sse),
  store: new Store(),
});
