import { setupApp } from "./app.js";

setupApp(document).catch((error) => {
  const status = document.getElementById("status");
  if (status) {
    status.textContent = `failed to reach the service: ${error}`;
  }
});
