# Tests para UDG-MCP
