/** Console entry point: wires the API client, session state, and DOM view. */

import { ApiClient, CatalogEntry } from "./api.js";
import { SessionController } from "./session.js";
import { render, ViewHandlers } from "./view.js";

const SERVICE_URL =
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8000";
const USER =
  new URLSearchParams(location.search).get("user") ?? "console";

async function boot(): Promise<void> {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app mount point");

  const client = new ApiClient(SERVICE_URL);
  let contestants: CatalogEntry[] = [];

  const controller = new SessionController(client, USER, (view) => {
    render(root, view, contestants, handlers);
  });

  const handlers: ViewHandlers = {
    onStart: (contestant) => void controller.start(contestant),
    onSend: (text) => void controller.send(text),
    onDeclare: (tag) => void controller.declare(tag),
  };

  try {
    const catalog = await client.getCatalog();
    contestants = catalog.entries.filter((e) => e.kind === "contestant");
  } catch (err) {
    controller.view.error = `cannot reach ${SERVICE_URL}: ${String(err)}`;
  }
  await controller.refreshScoreboard().catch(() => undefined);
  render(root, controller.view, contestants, handlers);
}

void boot();
