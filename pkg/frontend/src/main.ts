import { SessionApi } from "./api.js";
import { Controller } from "./app.js";

const DEFAULT_BASE = "http://127.0.0.1:8787";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");
const base =
  new URLSearchParams(window.location.search).get("api") ?? DEFAULT_BASE;
new Controller(root, new SessionApi(base));
