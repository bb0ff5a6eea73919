# UDG-MCP - Partición mínima en cliques para grafos de disco unitario
